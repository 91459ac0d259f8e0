// Copyright 2026 The ageleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGELEAK_JSON_IO_H_
#define AGELEAK_JSON_IO_H_

#include "absl/status/statusor.h"
#include "ageleak/pmf.h"
#include "json.hpp"

namespace ageleak {

nlohmann::json PmfToJsonValue(const FinitePmf& pmf);
absl::StatusOr<FinitePmf> PmfFromJsonValue(const nlohmann::json& value);

}  // namespace ageleak

#endif  // AGELEAK_JSON_IO_H_
