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

// Maximal leakage of the output timing sequence Y^n about the arrival
// sequence X^n, in bits, for full-support sources.
//
// Coupled servers (preemptive LCFS, FCFS) with a shortest-most-probable
// service pmf leak log2 sum_k C(n - k(s1-1), k) g(s1)^k bits over n slots.
// Accumulate-and-dump servers leak log2 E[2^K_n], where K_n counts dump
// attempts in n slots; the asymptotic rate is log2 z0 with z0 the positive
// root of E[z^-D] = 1/2.

#ifndef AGELEAK_LEAKAGE_H_
#define AGELEAK_LEAKAGE_H_

#include <cstdint>
#include <functional>

#include "absl/status/statusor.h"
#include "ageleak/pmf.h"

namespace ageleak {

struct LeakageResult {
  double bits = 0.0;
  std::int64_t n = 0;
};

struct RateBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Root of E[z^-D] = 1/2 together with the rate log2(z0).
struct RateRoot {
  double z0 = 2.0;
  double rate_bits = 1.0;
  double residual = 0.0;  // |E[z0^-D] - 1/2|
};

inline constexpr int kMaxBisectionIterations = 200;
inline constexpr double kRootResidualTolerance = 1e-12;

absl::StatusOr<LeakageResult> SmpLeakageBits(std::int64_t n, Slots s1,
                                             double beta);

absl::StatusOr<RateBounds> SmpRateBounds(Slots s1, double beta);

absl::StatusOr<LeakageResult> DadLeakageBits(std::int64_t n, Slots tau);

// log2 m(n) with m(n) = 2 sum_d g(d) m(n-d) + P(D > n), m(0) = 1. Runs in
// O(n |support|) time and keeps only the last max_duration values.
LeakageResult RadLeakageBits(std::int64_t n, const FinitePmf& dump_pmf);

absl::StatusOr<RateRoot> RadRateRoot(const FinitePmf& dump_pmf);
absl::StatusOr<double> RadRate(const FinitePmf& dump_pmf);

// log2(1 + 1/tau).
absl::StatusOr<double> GeometricRadRate(double tau);

// Rate of uniform dumps on {1..2tau-1}, solved from
// (1 - z^-(2tau-1)) / ((2tau-1)(z-1)) = 1/2.
absl::StatusOr<double> UniformRadRate(double tau);

// Average slots per leaked bit, 1/rate.
absl::StatusOr<double> LeakageTime(double rate_bits);

// Bisection for a strictly decreasing `f` on [lo, hi] with f(lo) >= target
// >= f(hi). Stops when the residual is below `tolerance` or the bracket
// collapses to adjacent doubles; ConvergenceFailure if neither happens
// within `max_iterations` or the final residual is too large.
absl::StatusOr<double> BisectDecreasing(const std::function<double(double)>& f,
                                        double lo, double hi, double target,
                                        double tolerance = kRootResidualTolerance,
                                        int max_iterations =
                                            kMaxBisectionIterations);

}  // namespace ageleak

#endif  // AGELEAK_LEAKAGE_H_
