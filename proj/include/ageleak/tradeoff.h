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

// Age / leakage-time trade-off curves.
//
// A policy family is a one-parameter set of servers. Each grid value gives
// one point (delta, rate, leak time T = 1/rate) plus the server efficiency
// eta = (T - 1) / (delta - delta_1), where delta_1 is the zero-delay age.
//
// Families and their parameter:
//   lcfs-greedy          beta   greedy SMP service, preemptive LCFS
//   lcfs-geo             tau    geometric service with mean tau
//   fcfs-greedy          beta   greedy SMP service, FCFS, fixed alpha
//   fcfs-greedy-thinned  beta   same with the age-optimal alpha
//   fcfs-geo             mu     geometric service, FCFS, fixed alpha
//   mbt                  mu     geometric service, FCFS, age-optimal alpha
//   dad                  tau    deterministic dump period (integer)
//   ddad                 rate   dithering dump schedule for a target rate
//   rad-geo              tau    geometric dump period with mean tau
//   rad-uniform          tau    dump period uniform on {1..2tau-1}
//
// Thinned FCFS points use the unthinned leakage rate log2(1 + g(1)), which
// bounds the thinned server's leakage from above.

#ifndef AGELEAK_TRADEOFF_H_
#define AGELEAK_TRADEOFF_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "ageleak/policy.h"
#include "ageleak/simulator.h"

namespace ageleak {

inline constexpr double kDominanceTolerance = 1e-9;
inline constexpr int kMinSlopePoints = 10;

struct TradeoffPoint {
  std::string policy_tag;
  double param = 0.0;
  double lambda = 0.0;  // long-run source rate
  std::string source;
  double delta = 0.0;
  double rate_bits = 0.0;
  double leak_time = 0.0;
  std::optional<double> eta;  // empty at the zero-delay point
  std::optional<double> sim_delta;
  std::optional<double> sim_ci;

  friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

const std::vector<std::string>& PolicyFamilies();

// Builds the server for one grid value. `alpha` is the admission
// probability for the FCFS families; for the optimized ones pass the value
// EvaluatePoint picked for the source.
absl::StatusOr<Policy> FamilyPolicy(std::string_view family, double param,
                                    double alpha = 1.0);

// Zero-delay age: 1 + 1/lambda for Bernoulli sources, source age + 1 for
// Markov sources.
absl::StatusOr<double> BaselineAge(const SourceModel& source);

// (T - 1) / (delta - (1 + 1/lambda)). BaselinePoint when delta equals the
// zero-delay age.
absl::StatusOr<double> Efficiency(const TradeoffPoint& point, double lambda);
absl::StatusOr<double> EfficiencyAgainst(const TradeoffPoint& point,
                                         double baseline_delta);

struct SweepSpec {
  std::string family;
  std::vector<double> grid;
  SourceModel source = BernoulliSource{};
  double alpha = 1.0;
  // Attach a simulation column when positive.
  std::int64_t sim_slots = 0;
  std::int64_t sim_warmup = 10'000;
  std::uint64_t seed = 1;
};

absl::StatusOr<TradeoffPoint> EvaluatePoint(std::string_view family,
                                            double param,
                                            const SourceModel& source,
                                            double alpha = 1.0);

// The server EvaluatePoint scores, including the optimized admission
// probability for fcfs-greedy-thinned and mbt.
absl::StatusOr<Policy> ResolvePolicy(std::string_view family, double param,
                                     const SourceModel& source,
                                     double alpha = 1.0);

// One point per grid value, in grid order. Simulation runs use
// StreamSeed(seed, index).
absl::StatusOr<std::vector<TradeoffPoint>> Sweep(const SweepSpec& spec);

// "start:stop:step" (inclusive) or "v1,v2,...".
absl::StatusOr<std::vector<double>> ParseGrid(std::string_view text);

struct DeltaRange {
  double lo = 0.0;
  double hi = 0.0;
};

// True iff a's leak time, interpolated piecewise-linearly in delta, is at
// least b's at every delta point of either series inside the common range.
absl::StatusOr<bool> DominanceCheck(
    const std::vector<TradeoffPoint>& a, const std::vector<TradeoffPoint>& b,
    std::optional<DeltaRange> range = std::nullopt);

// Least-squares slope of T against delta over the largest-delta
// `tail_fraction` of the points.
absl::StatusOr<double> AsymptoticSlope(const std::vector<TradeoffPoint>& series,
                                       double tail_fraction);

// policy_tag,param,lambda,source,delta,rate_bits,leak_time,eta,sim_delta,sim_ci
std::string TradeoffCsvHeader();
std::string ToCsv(const std::vector<TradeoffPoint>& points);
absl::StatusOr<std::vector<TradeoffPoint>> FromCsv(std::string_view text);

}  // namespace ageleak

#endif  // AGELEAK_TRADEOFF_H_
