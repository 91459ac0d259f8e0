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

#ifndef AGELEAK_POLICY_H_
#define AGELEAK_POLICY_H_

#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "ageleak/pmf.h"
#include "json.hpp"

namespace ageleak {

// Lossless FIFO queue; each arrival is admitted with probability
// `admit_prob` and then served for an i.i.d. duration.
struct FcfsPolicy {
  FinitePmf service;
  double admit_prob = 1.0;
};

// Single-slot buffer with preemption: a new arrival replaces the update in
// service and restarts service with a fresh draw.
struct LcfsPolicy {
  FinitePmf service;
};

// Accumulate-and-dump: keeps only the freshest update and transmits it at
// renewal instants spaced by i.i.d. draws from `dump`. DAD and D-DAD are the
// point-mass and two-point cases.
struct RadPolicy {
  FinitePmf dump;
};

using Policy = std::variant<FcfsPolicy, LcfsPolicy, RadPolicy>;

// "fcfs", "lcfs" or "rad".
std::string PolicyKind(const Policy& policy);

// The service or dump distribution.
const FinitePmf& PolicyPmf(const Policy& policy);

bool IsCoupled(const Policy& policy);

// Scenario JSON. Accepted forms:
//   {"kind": "lcfs", "service": <pmf>}
//   {"kind": "fcfs", "service": <pmf>, "alpha": 1.0}
//   {"kind": "rad",  "dump": <pmf>}
//   {"kind": "dad",  "tau": 5}
//   {"kind": "lcfs-greedy" | "fcfs-greedy", "beta": 0.4 [, "alpha": a]}
//   {"kind": "lcfs-geo" | "rad-geo" | "fcfs-geo", "tau": 4 [, "alpha": a]}
//   {"kind": "rad-uniform", "tau": 2}
//   {"kind": "ddad", "rate": 0.4}
absl::StatusOr<Policy> PolicyFromJsonValue(const nlohmann::json& value);
nlohmann::json PolicyToJsonValue(const Policy& policy);

}  // namespace ageleak

#endif  // AGELEAK_POLICY_H_
