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

// End-to-end checks of the library against exact values, the brute-force
// oracle and simulation. Each criterion reports pass/fail with a short
// numeric summary.

#ifndef AGELEAK_ACCEPTANCE_H_
#define AGELEAK_ACCEPTANCE_H_

#include <functional>
#include <string>
#include <vector>

namespace ageleak {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs every criterion in order. `on_result`, when set, is called as each
// one finishes so callers can stream output.
std::vector<CriterionResult> RunAcceptanceSuite(
    const std::function<void(const CriterionResult&)>& on_result = nullptr);

// "PASS [3] fibonacci-leakage (0.01 s): ..." style line.
std::string FormatCriterion(const CriterionResult& result);

}  // namespace ageleak

#endif  // AGELEAK_ACCEPTANCE_H_
