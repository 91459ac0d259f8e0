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

// Slot-accurate Monte Carlo of source -> server -> monitor.
//
// Each slot runs in the order: record the monitor's age, let the source
// emit (an update generated in slot t-1 arrives in slot t), let the server
// act, deliver. Delivering an update with timestamp u in slot d makes the
// monitor's age d - u + 1 at the start of slot d + 1.

#ifndef AGELEAK_SIMULATOR_H_
#define AGELEAK_SIMULATOR_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "ageleak/age.h"
#include "ageleak/policy.h"
#include "json.hpp"

namespace ageleak {

inline constexpr int kBatchCount = 30;
// Two-sided 95% Student t quantile with kBatchCount - 1 degrees of freedom.
inline constexpr double kBatchTQuantile = 2.045229642132703;

struct BernoulliSource {
  double lambda = 0.5;
};

using SourceModel = std::variant<BernoulliSource, MarkovSource>;

// Long-run arrival probability per slot.
double SourceRate(const SourceModel& source);

struct SimConfig {
  Policy policy;
  SourceModel source = BernoulliSource{};
  std::int64_t horizon = 1'000'000;  // total slots, warmup included
  std::int64_t warmup = 10'000;
  std::uint64_t seed = 1;
  // Accumulate-and-dump only: an attempt that finds the buffer empty
  // resends the previous dump instead of staying silent.
  bool rad_fake_updates = false;
};

struct SimStats {
  double mean_age = 0.0;
  double ci_half_width = 0.0;  // 95%, batch means
  std::int64_t delivered = 0;  // fresh deliveries after warmup
  double output_rate = 0.0;    // transmissions per slot after warmup
  double source_rate = 0.0;    // arrivals per slot after warmup
  // FCFS queue diagnostics (zero for other servers).
  std::int64_t max_queue = 0;
  double tail_queue_slope = 0.0;  // least-squares slope, last 10% of slots
};

absl::StatusOr<SimStats> Simulate(const SimConfig& config);

struct SourceConfig {
  SourceModel source = BernoulliSource{};
  std::int64_t horizon = 1'000'000;
  std::int64_t warmup = 10'000;
  std::uint64_t seed = 1;
};

struct SourceAgeStats {
  SimStats stats;
  // Empirical P(A_s = a), index a; entry 0 is always zero.
  std::vector<double> age_pmf;
};

// Age of the newest generated update, sampled right after each slot's
// arrival step. Bernoulli sources average 1/lambda.
absl::StatusOr<SourceAgeStats> EmpiricalSourceAge(const SourceConfig& config);

// Seed for the index-th run of a sweep.
std::uint64_t StreamSeed(std::uint64_t base, std::uint64_t index);

// Scenario JSON:
//   {"policy": {...}, "source": {"kind": "bernoulli", "lambda": 0.5},
//    "horizon": 1000000, "warmup": 10000, "seed": 7, "fake_updates": false}
// or "source": {"kind": "markov", "p01": 0.05, "p10": 0.2}.
absl::StatusOr<SimConfig> SimConfigFromJsonValue(const nlohmann::json& value);
absl::StatusOr<SimConfig> SimConfigFromFile(const std::string& path);

absl::StatusOr<SourceModel> SourceFromJsonValue(const nlohmann::json& value);
nlohmann::json SourceToJsonValue(const SourceModel& source);

// "bernoulli(0.5)" or "markov(0.05,0.2)".
std::string SourceLabel(const SourceModel& source);

}  // namespace ageleak

#endif  // AGELEAK_SIMULATOR_H_
