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

#include "ageleak/json_io.h"

#include <vector>

#include "ageleak/status.h"

namespace ageleak {

nlohmann::json PmfToJsonValue(const FinitePmf& pmf) {
  nlohmann::json entries = nlohmann::json::array();
  for (const PmfEntry& e : pmf.entries()) {
    entries.push_back(nlohmann::json::array({e.duration, e.probability}));
  }
  return nlohmann::json{{"entries", std::move(entries)}};
}

absl::StatusOr<FinitePmf> PmfFromJsonValue(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("entries") ||
      !value["entries"].is_array()) {
    return MakeError(ErrorKind::kParseError,
                     "pmf JSON needs an \"entries\" array");
  }
  std::vector<PmfEntry> entries;
  for (const nlohmann::json& item : value["entries"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number()) {
      return MakeError(ErrorKind::kParseError,
                       "each pmf entry must be [duration, probability]");
    }
    entries.push_back({item[0].get<Slots>(), item[1].get<double>()});
  }
  return MakePmf(entries);
}

}  // namespace ageleak
