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

// Age-optimal policies under a leakage constraint.
//
// Coupled (preemptive LCFS, SMP class): with g(1) = beta fixed, age is
// minimized by putting beta on each of 1..k, k = floor(1/beta), and the
// remainder on k+1.
//
// Decoupled (accumulate-and-dump): with rate Lambda fixed, E[D^2]/E[D] is
// minimized by dithering between the periods floor(1/Lambda) and the next
// integer, with weights solving p_i z0^-i + p_j z0^-j = 1/2, z0 = 2^Lambda.

#ifndef AGELEAK_OPTIMIZER_H_
#define AGELEAK_OPTIMIZER_H_

#include "absl/status/statusor.h"
#include "ageleak/age.h"
#include "ageleak/pmf.h"

namespace ageleak {

// Tolerance used to decide that 1/Lambda is an integer.
inline constexpr double kIntegerPeriodTolerance = 1e-9;

struct DitherPolicy {
  Slots i = 1;  // earlier period
  Slots j = 2;  // i + 1
  double p_i = 1.0;
  double p_j = 0.0;
  double z0 = 2.0;
  double target_rate = 1.0;

  // Mean period i + p_j.
  double mean_period() const { return static_cast<double>(i) + p_j; }
  bool is_deterministic() const { return p_j == 0.0; }

  // Two-point pmf, or a point mass at i when the dither collapses.
  FinitePmf ToPmf() const;

  // |p_i z0^-i + p_j z0^-j - 1/2|.
  double ConstraintResidual() const;
};

struct DinkelbachCertificate {
  double gamma_star = 0.0;    // E[D^2] / E[D]
  double residual = 0.0;      // |E[D^2] - gamma* E[D]|
  bool sandwich_ok = false;   // i <= gamma* < j (strict for true dithers)
  bool convexity_ok = false;  // gamma* < 2 + 2 / log2(z0)
};

absl::StatusOr<FinitePmf> GreedySmpPmf(double beta);

absl::StatusOr<DitherPolicy> DdadPolicy(double target_rate);

// Wraps a deterministic period as a collapsed dither.
absl::StatusOr<DitherPolicy> DadAsDither(Slots tau);

DinkelbachCertificate DinkelbachCertify(const DitherPolicy& policy);

struct TwoPointSearchResult {
  bool optimal = false;
  double ddad_ratio = 0.0;        // E[D^2]/E[D] of the D-DAD policy
  double best_vertex_ratio = 0.0; // best ratio over all feasible vertices
  double dinkelbach_gamma = 0.0;  // fixed point of the iterative search
  int vertices_checked = 0;
};

// Exhaustive LP-vertex check on {1..search_d_max}: every feasible one- or
// two-point pmf meeting the rate constraint (to 1e-6) is enumerated, and an
// iterative Dinkelbach line search runs over the same vertex set. The
// dithering policy is optimal when nothing beats its ratio by more than
// 1e-9 and the line search lands on it.
absl::StatusOr<TwoPointSearchResult> SearchTwoPointOptimum(
    double target_rate, Slots search_d_max);

absl::StatusOr<bool> VerifyTwoPointOptimality(double target_rate,
                                              Slots search_d_max);

struct AlphaChoice {
  double alpha = 1.0;
  AgeResult age;
};

// Minimizes the thinned-FCFS age over the stable admission range
// (eps, min(1, (1-eps)/(lambda E[S]))] by a grid scan followed by
// golden-section refinement to 1e-6.
absl::StatusOr<AlphaChoice> OptimalAlphaForFcfs(double lambda,
                                                const FinitePmf& service);

// Same search for geometric(mu) service using the closed form.
absl::StatusOr<AlphaChoice> OptimalAlphaForMbt(double lambda, double mu);

}  // namespace ageleak

#endif  // AGELEAK_OPTIMIZER_H_
