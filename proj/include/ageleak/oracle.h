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

// Exact maximal leakage by exhaustive enumeration, for small horizons.
//
// For every input word x in {0,1}^n the server's randomness (service or
// inter-dump draws, admission coin flips) is expanded as a weighted decision
// tree, giving P(y | x) exactly. Leakage is then log2 sum_y max_x P(y | x).
//
// Words are packed little-endian: bit t-1 holds slot t.

#ifndef AGELEAK_ORACLE_H_
#define AGELEAK_ORACLE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ageleak/leakage.h"
#include "ageleak/policy.h"

namespace ageleak {

inline constexpr int kMaxOracleHorizon = 14;
inline constexpr int kMaxMlCheckHorizon = 12;

using Word = std::uint32_t;

// "1010" -> slots 1 and 3 set. Characters other than '0'/'1' are rejected.
absl::StatusOr<Word> WordFromString(std::string_view bits);
std::string WordToString(Word word, int n);

// P(y | x) indexed by y, size 2^n.
absl::StatusOr<std::vector<double>> EnumerateChannel(const Policy& policy,
                                                     Word x, int n);

struct ChannelTable {
  int n = 0;
  // max_x P(y | x), indexed by y.
  std::vector<double> ml_prob;
  // Worst |sum_y P(y | x) - 1| over all inputs.
  double max_normalization_error = 0.0;
};

absl::StatusOr<ChannelTable> BuildChannelTable(const Policy& policy, int n);

absl::StatusOr<LeakageResult> BruteForceMaxl(const Policy& policy, int n);

// The input expected to be maximum likelihood for y:
// for queueing servers every departure is matched by an arrival s_min - 1
// slots earlier; for accumulate-and-dump servers it is y itself.
Word DesignatedInput(const Policy& policy, Word y);

// True iff DesignatedInput attains max_x P(y | x) to 1e-12 for every y
// with positive probability.
absl::StatusOr<bool> VerifyMlInput(const Policy& policy, int n);

}  // namespace ageleak

#endif  // AGELEAK_ORACLE_H_
