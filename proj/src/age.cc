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

#include "ageleak/age.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

absl::Status ValidateLambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    return MakeError(ErrorKind::kInvalidLambda,
                     absl::StrFormat("lambda=%g not in (0,1]", lambda));
  }
  return absl::OkStatus();
}

// sum_s g(s) x^(s-1); pow(0, 0) == 1 covers lambda == 1.
double ShiftedPgf(const FinitePmf& pmf, double x) {
  double sum = 0.0;
  for (const PmfEntry& e : pmf.entries()) {
    sum += e.probability * std::pow(x, static_cast<double>(e.duration - 1));
  }
  return sum;
}

}  // namespace

absl::Status ValidateMarkovSource(const MarkovSource& src) {
  if (!(src.p01 > 0.0 && src.p01 <= 1.0) ||
      !(src.p10 > 0.0 && src.p10 <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("Markov transitions (%g, %g) not in (0,1]",
                                     src.p01, src.p10));
  }
  return absl::OkStatus();
}

double MarkovEffectiveRate(const MarkovSource& src) {
  return src.p01 / (src.p01 + src.p10);
}

absl::StatusOr<AgeResult> LcfsAge(double lambda, const FinitePmf& service) {
  AGELEAK_RETURN_IF_ERROR(ValidateLambda(lambda));
  const double delivered = ShiftedPgf(service, 1.0 - lambda);
  if (!(delivered > 0.0)) {
    return MakeError(ErrorKind::kUnstable,
                     "every update is preempted before it departs");
  }
  return AgeResult{1.0 + 1.0 / (lambda * delivered)};
}

absl::StatusOr<AgeResult> FcfsAge(double lambda, const FinitePmf& service,
                                  double alpha) {
  AGELEAK_RETURN_IF_ERROR(ValidateLambda(lambda));
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("admission probability %g not in (0,1]",
                                     alpha));
  }
  const double rate = alpha * lambda;
  const Moments m = PmfMoments(service);
  const double load = rate * m.mean;
  if (!(load < 1.0)) {
    return MakeError(ErrorKind::kUnstable,
                     absl::StrFormat("load %g >= 1", load));
  }
  const double idle = 1.0 - rate;
  // M_g(idle) = sum_s g(s) idle^s.
  const double mgf = idle * ShiftedPgf(service, idle);
  double delta = 1.0 + m.mean;
  if (mgf > 0.0) {
    delta += idle * (1.0 - load) / (rate * mgf);
  }
  delta += rate * (m.second_moment - m.mean) / (2.0 * (1.0 - load));
  return AgeResult{delta};
}

absl::StatusOr<AgeResult> MbtAge(double alpha, double mu, double lambda) {
  AGELEAK_RETURN_IF_ERROR(ValidateLambda(lambda));
  if (!(alpha > 0.0 && alpha <= 1.0) || !(mu > 0.0 && mu <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("alpha=%g, mu=%g must lie in (0,1]",
                                     alpha, mu));
  }
  const double rate = alpha * lambda;
  if (!(mu > rate)) {
    return MakeError(ErrorKind::kUnstable,
                     absl::StrFormat("mu=%g <= alpha*lambda=%g", mu, rate));
  }
  return AgeResult{1.0 / rate + 1.0 / mu +
                   rate * rate * (1.0 - mu) / (mu * mu * (mu - rate))};
}

absl::StatusOr<AgeResult> RadAge(double lambda, const FinitePmf& dump) {
  AGELEAK_RETURN_IF_ERROR(ValidateLambda(lambda));
  const Moments m = PmfMoments(dump);
  return AgeResult{1.0 / lambda + m.second_moment / (2.0 * m.mean) + 0.5};
}

absl::StatusOr<AgeResult> DdadAge(double lambda, double tau) {
  AGELEAK_RETURN_IF_ERROR(ValidateLambda(lambda));
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean dump period %g < 1", tau));
  }
  const double p_late = tau - std::floor(tau);
  const double p_early = 1.0 - p_late;
  return AgeResult{1.0 / lambda + tau / 2.0 + p_early * p_late / (2.0 * tau) +
                   0.5};
}

absl::StatusOr<AgeResult> MarkovSourceAge(const MarkovSource& src) {
  AGELEAK_RETURN_IF_ERROR(ValidateMarkovSource(src));
  return AgeResult{1.0 + src.p10 / (src.p01 * (src.p01 + src.p10))};
}

absl::StatusOr<AgeResult> MarkovMonitorAge(const MarkovSource& src,
                                           MarkovServer server, double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean period %g < 1", tau));
  }
  AGELEAK_ASSIGN_OR_RETURN(AgeResult source_age, MarkovSourceAge(src));
  const double sampling =
      server == MarkovServer::kLcfsGeometric ? tau : (tau + 1.0) / 2.0;
  return AgeResult{source_age.delta + sampling};
}

AgeResult RenewalSamplingAge(const Moments& interarrival,
                             const Moments& interdump) {
  return AgeResult{interarrival.second_moment / (2.0 * interarrival.mean) +
                   interdump.second_moment / (2.0 * interdump.mean) + 1.0};
}

Moments BernoulliInterarrivalMoments(double lambda) {
  Moments m;
  m.mean = 1.0 / lambda;
  m.second_moment = (2.0 - lambda) / (lambda * lambda);
  m.variance = (1.0 - lambda) / (lambda * lambda);
  return m;
}

}  // namespace ageleak
