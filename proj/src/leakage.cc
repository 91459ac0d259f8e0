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

#include "ageleak/leakage.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "absl/strings/str_format.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

absl::Status ValidateBeta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    return MakeError(ErrorKind::kInvalidBeta,
                     absl::StrFormat("beta=%g not in (0,1]", beta));
  }
  return absl::OkStatus();
}

double LogChoose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

// E[z^-D].
double DumpTransform(const FinitePmf& pmf, double z) {
  const double log_z = std::log(z);
  double sum = 0.0;
  for (const PmfEntry& e : pmf.entries()) {
    sum += e.probability * std::exp(-static_cast<double>(e.duration) * log_z);
  }
  return sum;
}

}  // namespace

absl::StatusOr<LeakageResult> SmpLeakageBits(std::int64_t n, Slots s1,
                                             double beta) {
  AGELEAK_RETURN_IF_ERROR(ValidateBeta(beta));
  if (n < 0) {
    return MakeError(ErrorKind::kInvalidArgument, "horizon must be >= 0");
  }
  if (s1 < 1) {
    return MakeError(ErrorKind::kNonPositiveDuration,
                     "minimum service time must be >= 1");
  }
  if (n == 0) return LeakageResult{0.0, 0};

  // log-sum-exp over k of ln C(n - k(s1-1), k) + k ln(beta).
  const std::int64_t k_max = n / s1;
  const double log_beta = std::log(beta);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k_max + 1));
  double peak = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const double top = static_cast<double>(n - k * (s1 - 1));
    const double term =
        LogChoose(top, static_cast<double>(k)) + static_cast<double>(k) * log_beta;
    terms.push_back(term);
    peak = std::max(peak, term);
  }
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  const double bits = (peak + std::log(acc)) / std::numbers::ln2;
  return LeakageResult{std::clamp(bits, 0.0, static_cast<double>(n)), n};
}

absl::StatusOr<RateBounds> SmpRateBounds(Slots s1, double beta) {
  AGELEAK_RETURN_IF_ERROR(ValidateBeta(beta));
  if (s1 < 1) {
    return MakeError(ErrorKind::kNonPositiveDuration,
                     "minimum service time must be >= 1");
  }
  const double upper = std::log2(1.0 + beta);
  return RateBounds{upper / static_cast<double>(s1), upper};
}

absl::StatusOr<LeakageResult> DadLeakageBits(std::int64_t n, Slots tau) {
  if (tau < 1) {
    return MakeError(ErrorKind::kInvalidTau, "dump period must be >= 1");
  }
  if (n < 0) {
    return MakeError(ErrorKind::kInvalidArgument, "horizon must be >= 0");
  }
  return LeakageResult{static_cast<double>(n / tau), n};
}

LeakageResult RadLeakageBits(std::int64_t n, const FinitePmf& dump_pmf) {
  if (n <= 0) return LeakageResult{0.0, std::max<std::int64_t>(n, 0)};

  // Ring buffer of m(j) / 2^log2_scale for j in (t - window, t].
  const Slots window = dump_pmf.max_duration() + 1;
  std::vector<double> ring(static_cast<std::size_t>(window), 0.0);
  auto slot = [&](std::int64_t j) -> double& {
    return ring[static_cast<std::size_t>(j % window)];
  };
  double log2_scale = 0.0;
  slot(0) = 1.0;

  // P(D > t) for t < max_duration; zero afterwards.
  std::vector<double> tail(static_cast<std::size_t>(dump_pmf.max_duration()),
                           0.0);
  {
    double mass = 1.0;
    std::size_t idx = 0;
    for (Slots t = 0; t < dump_pmf.max_duration(); ++t) {
      while (idx < dump_pmf.size() &&
             dump_pmf.entries()[idx].duration <= t) {
        mass -= dump_pmf.entries()[idx].probability;
        ++idx;
      }
      tail[static_cast<std::size_t>(t)] = std::max(mass, 0.0);
    }
  }

  constexpr double kRescaleAbove = 1e150;
  for (std::int64_t t = 1; t <= n; ++t) {
    double value = 0.0;
    for (const PmfEntry& e : dump_pmf.entries()) {
      if (e.duration > t) break;
      value += e.probability * slot(t - e.duration);
    }
    value *= 2.0;
    if (t < dump_pmf.max_duration()) {
      value += tail[static_cast<std::size_t>(t)] * std::exp2(-log2_scale);
    }
    slot(t) = value;
    if (value > kRescaleAbove) {
      const double shift = std::log2(value);
      const double factor = std::exp2(-shift);
      for (double& v : ring) v *= factor;
      log2_scale += shift;
    }
  }
  const double bits = log2_scale + std::log2(slot(n));
  return LeakageResult{std::clamp(bits, 0.0, static_cast<double>(n)), n};
}

absl::StatusOr<double> BisectDecreasing(const std::function<double(double)>& f,
                                        double lo, double hi, double target,
                                        double tolerance, int max_iterations) {
  double f_lo = f(lo) - target;
  double f_hi = f(hi) - target;
  if (f_lo < 0.0 || f_hi > 0.0) {
    return MakeError(ErrorKind::kConvergenceFailure,
                     absl::StrFormat("no sign change on [%g, %g]", lo, hi));
  }
  if (f_hi == 0.0) return hi;
  if (f_lo == 0.0) return lo;
  bool collapsed = false;
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      collapsed = true;
      break;
    }
    const double f_mid = f(mid) - target;
    if (f_mid == 0.0) return mid;
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double best = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  const double residual = std::min(std::abs(f_lo), std::abs(f_hi));
  if (!collapsed && residual > tolerance) {
    return MakeError(ErrorKind::kConvergenceFailure,
                     absl::StrFormat("bisection stalled with residual %g after "
                                     "%d iterations",
                                     residual, max_iterations));
  }
  if (residual > tolerance) {
    return MakeError(
        ErrorKind::kConvergenceFailure,
        absl::StrFormat("residual %g above tolerance %g", residual, tolerance));
  }
  return best;
}

absl::StatusOr<RateRoot> RadRateRoot(const FinitePmf& dump_pmf) {
  // f(1) = 1 and f(2) <= 1/2 because every duration is >= 1.
  auto f = [&dump_pmf](double z) { return DumpTransform(dump_pmf, z); };
  AGELEAK_ASSIGN_OR_RETURN(double z0, BisectDecreasing(f, 1.0, 2.0, 0.5));
  RateRoot root;
  root.z0 = z0;
  root.rate_bits = std::log2(z0);
  root.residual = std::abs(f(z0) - 0.5);
  return root;
}

absl::StatusOr<double> RadRate(const FinitePmf& dump_pmf) {
  AGELEAK_ASSIGN_OR_RETURN(RateRoot root, RadRateRoot(dump_pmf));
  return root.rate_bits;
}

absl::StatusOr<double> GeometricRadRate(double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean dump period %g < 1", tau));
  }
  return std::log2(1.0 + 1.0 / tau);
}

absl::StatusOr<double> UniformRadRate(double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean dump period %g < 1", tau));
  }
  const double k_real = 2.0 * tau - 1.0;
  const double k = std::round(k_real);
  if (std::abs(k_real - k) > 1e-9) {
    return MakeError(ErrorKind::kNonHalfIntegerTau,
                     absl::StrFormat("2*tau-1 = %g is not an integer", k_real));
  }
  if (k == 1.0) return 1.0;
  auto f = [k](double z) {
    if (z == 1.0) return 1.0;
    return -std::expm1(-k * std::log(z)) / (k * (z - 1.0));
  };
  AGELEAK_ASSIGN_OR_RETURN(double z0, BisectDecreasing(f, 1.0, 2.0, 0.5));
  return std::log2(z0);
}

absl::StatusOr<double> LeakageTime(double rate_bits) {
  if (!(rate_bits > 0.0)) {
    return MakeError(ErrorKind::kZeroRate,
                     absl::StrFormat("leakage rate %g is not positive",
                                     rate_bits));
  }
  return 1.0 / rate_bits;
}

}  // namespace ageleak
