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

// Closed-form average age of information at the monitor, in slots.
//
// Timing convention: an update generated in slot t-1 reaches the server at
// the start of slot t; if it leaves the server in slot d, the monitor's age
// at the start of slot d+1 is d - (t-1) + 1. A zero-delay server therefore
// averages 1 + 1/lambda under Bernoulli(lambda) arrivals.

#ifndef AGELEAK_AGE_H_
#define AGELEAK_AGE_H_

#include "absl/status/statusor.h"
#include "ageleak/pmf.h"

namespace ageleak {

struct AgeResult {
  double delta = 0.0;
};

// Two-state source: state 1 emits an update. Transition probabilities
// inactive->active (p01) and active->inactive (p10), both in (0, 1].
struct MarkovSource {
  double p01 = 0.5;
  double p10 = 0.5;
};

absl::Status ValidateMarkovSource(const MarkovSource& src);

// Stationary probability of the active state.
double MarkovEffectiveRate(const MarkovSource& src);

// Preemptive LCFS, Bernoulli arrivals: 1 + 1 / (lambda E[(1-lambda)^(S-1)]).
absl::StatusOr<AgeResult> LcfsAge(double lambda, const FinitePmf& service);

// Lossless FCFS with Bernoulli(alpha) admission; the effective rate
// alpha * lambda replaces lambda everywhere in the Ber/G/1 formula.
absl::StatusOr<AgeResult> FcfsAge(double lambda, const FinitePmf& service,
                                  double alpha = 1.0);

// FCFS with thinning and geometric(mu) service.
absl::StatusOr<AgeResult> MbtAge(double alpha, double mu, double lambda);

// Accumulate-and-dump: 1/lambda + E[D^2] / (2 E[D]) + 1/2.
absl::StatusOr<AgeResult> RadAge(double lambda, const FinitePmf& dump);

// Dithering between floor(tau) and floor(tau)+1 with mean tau.
absl::StatusOr<AgeResult> DdadAge(double lambda, double tau);

// Age at the server input for a two-state Markov source.
absl::StatusOr<AgeResult> MarkovSourceAge(const MarkovSource& src);

enum class MarkovServer { kLcfsGeometric, kDad };

// Source age plus the age added by the server's sampling renewal process:
// tau for geometric LCFS with mean service tau, (tau+1)/2 for DAD.
absl::StatusOr<AgeResult> MarkovMonitorAge(const MarkovSource& src,
                                           MarkovServer server, double tau);

// E[B^2] / (2 E[B]) + E[D^2] / (2 E[D]) + 1 for independent renewal
// arrivals (inter-arrival B) and renewal sampling (inter-sample D).
AgeResult RenewalSamplingAge(const Moments& interarrival,
                             const Moments& interdump);

// Moments of a geometric(lambda) inter-arrival time.
Moments BernoulliInterarrivalMoments(double lambda);

}  // namespace ageleak

#endif  // AGELEAK_AGE_H_
