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

// Hand-rolled random generators shared by the property tests.

#ifndef AGELEAK_TESTS_TEST_UTIL_H_
#define AGELEAK_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ageleak/pmf.h"

namespace ageleak::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::int64_t Int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  // Random pmf on a random subset of {1..max_d}.
  FinitePmf Pmf(Slots max_d) {
    std::vector<PmfEntry> entries;
    double total = 0.0;
    for (Slots d = 1; d <= max_d; ++d) {
      const bool forced = entries.empty() && d == max_d;
      if (!forced && Uniform(0.0, 1.0) < 0.4) continue;
      const double w = Uniform(0.05, 1.0);
      entries.push_back({d, w});
      total += w;
    }
    for (PmfEntry& e : entries) e.probability /= total;
    return *MakePmf(entries);
  }

  // Random SMP pmf with g(1) = beta: the rest of the mass is spread over
  // {2..max_d} in chunks no larger than beta.
  FinitePmf SmpPmfWithHead(double beta, Slots max_d) {
    std::vector<double> mass(static_cast<std::size_t>(max_d + 1), 0.0);
    mass[1] = beta;
    double left = 1.0 - beta;
    while (left > 1e-12) {
      const Slots d = Int(2, max_d);
      const double room = beta - mass[static_cast<std::size_t>(d)];
      if (room <= 0.0) continue;
      const double put = std::min({left, room, Uniform(0.0, beta)});
      mass[static_cast<std::size_t>(d)] += put;
      left -= put;
    }
    std::vector<PmfEntry> entries;
    for (Slots d = 1; d <= max_d; ++d) {
      if (mass[static_cast<std::size_t>(d)] > 0.0) {
        entries.push_back({d, mass[static_cast<std::size_t>(d)]});
      }
    }
    return *MakePmf(entries);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ageleak::testing

#endif  // AGELEAK_TESTS_TEST_UTIL_H_
