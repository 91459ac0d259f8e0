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

#include "ageleak/optimizer.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "absl/strings/str_format.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

constexpr double kVertexTolerance = 1e-6;
constexpr double kRatioSlack = 1e-9;
constexpr Slots kMaxSearchSupport = 12;
constexpr double kAlphaEpsilon = 1e-6;
constexpr double kAlphaTolerance = 1e-6;
constexpr int kAlphaGridPoints = 200;

absl::Status ValidateRate(double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    return MakeError(ErrorKind::kInvalidRate,
                     absl::StrFormat("target rate %g not in (0,1]", rate));
  }
  return absl::OkStatus();
}

// Feasible LP vertex: mass p on a and 1-p on b (b == a for a point mass).
struct Vertex {
  Slots a = 1;
  Slots b = 1;
  double p = 1.0;

  double Mean() const {
    return p * static_cast<double>(a) + (1.0 - p) * static_cast<double>(b);
  }
  double SecondMoment() const {
    const double da = static_cast<double>(a);
    const double db = static_cast<double>(b);
    return p * da * da + (1.0 - p) * db * db;
  }
  double Ratio() const { return SecondMoment() / Mean(); }
};

std::vector<Vertex> FeasibleVertices(double z0, Slots d_max) {
  std::vector<double> x(static_cast<std::size_t>(d_max + 1));
  for (Slots d = 1; d <= d_max; ++d) {
    x[static_cast<std::size_t>(d)] = std::pow(z0, -static_cast<double>(d));
  }
  std::vector<Vertex> out;
  for (Slots d = 1; d <= d_max; ++d) {
    if (std::abs(x[static_cast<std::size_t>(d)] - 0.5) <= kVertexTolerance) {
      out.push_back({d, d, 1.0});
    }
  }
  for (Slots a = 1; a <= d_max; ++a) {
    const double xa = x[static_cast<std::size_t>(a)];
    if (xa < 0.5) break;
    for (Slots b = a + 1; b <= d_max; ++b) {
      const double xb = x[static_cast<std::size_t>(b)];
      if (xb > 0.5) continue;
      const double p = (0.5 - xb) / (xa - xb);
      if (p < 0.0 || p > 1.0) continue;
      out.push_back({a, b, p});
    }
  }
  return out;
}

// Dinkelbach iteration: gamma <- ratio of argmin_v E[D^2] - gamma E[D].
double DinkelbachOverVertices(const std::vector<Vertex>& vertices) {
  double gamma = vertices.front().Ratio();
  for (int it = 0; it < 100; ++it) {
    const Vertex* best = &vertices.front();
    double best_cost = std::numeric_limits<double>::infinity();
    for (const Vertex& v : vertices) {
      const double cost = v.SecondMoment() - gamma * v.Mean();
      if (cost < best_cost) {
        best_cost = cost;
        best = &v;
      }
    }
    if (best_cost >= -1e-15) break;
    gamma = best->Ratio();
  }
  return gamma;
}

absl::StatusOr<AlphaChoice> MinimizeOverAlpha(
    double hi, const std::function<absl::StatusOr<AgeResult>(double)>& age) {
  const double lo = kAlphaEpsilon;
  if (!(hi > lo)) {
    return MakeError(ErrorKind::kNoFeasibleAlpha,
                     "no admission probability keeps the queue stable");
  }
  auto eval = [&](double a) -> absl::StatusOr<double> {
    AGELEAK_ASSIGN_OR_RETURN(AgeResult r, age(a));
    return r.delta;
  };

  // Coarse scan to bracket the minimum.
  int best_idx = 0;
  double best_val = std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / kAlphaGridPoints;
  for (int k = 0; k <= kAlphaGridPoints; ++k) {
    const double a = k == kAlphaGridPoints ? hi : lo + step * k;
    AGELEAK_ASSIGN_OR_RETURN(double v, eval(a));
    if (v < best_val) {
      best_val = v;
      best_idx = k;
    }
  }
  double left = lo + step * std::max(best_idx - 1, 0);
  double right = std::min(hi, lo + step * std::min(best_idx + 1,
                                                   kAlphaGridPoints));

  // Golden-section refinement.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = right - inv_phi * (right - left);
  double d = left + inv_phi * (right - left);
  AGELEAK_ASSIGN_OR_RETURN(double fc, eval(c));
  AGELEAK_ASSIGN_OR_RETURN(double fd, eval(d));
  while (right - left > kAlphaTolerance) {
    if (fc <= fd) {
      right = d;
      d = c;
      fd = fc;
      c = right - inv_phi * (right - left);
      AGELEAK_ASSIGN_OR_RETURN(fc, eval(c));
    } else {
      left = c;
      c = d;
      fc = fd;
      d = left + inv_phi * (right - left);
      AGELEAK_ASSIGN_OR_RETURN(fd, eval(d));
    }
  }
  double alpha = 0.5 * (left + right);
  AGELEAK_ASSIGN_OR_RETURN(double f_alpha, eval(alpha));

  // The minimum often sits on the stability or unit boundary.
  for (double candidate : {lo, hi}) {
    AGELEAK_ASSIGN_OR_RETURN(double v, eval(candidate));
    if (v <= f_alpha) {
      alpha = candidate;
      f_alpha = v;
    }
  }
  return AlphaChoice{alpha, AgeResult{f_alpha}};
}

}  // namespace

FinitePmf DitherPolicy::ToPmf() const {
  std::vector<PmfEntry> entries = {{i, p_i}};
  if (p_j > 0.0) entries.push_back({j, p_j});
  // Built from a validated policy; the mass always sums to one.
  return *MakePmf(entries);
}

double DitherPolicy::ConstraintResidual() const {
  return std::abs(p_i * std::pow(z0, -static_cast<double>(i)) +
                  p_j * std::pow(z0, -static_cast<double>(j)) - 0.5);
}

absl::StatusOr<FinitePmf> GreedySmpPmf(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    return MakeError(ErrorKind::kInvalidBeta,
                     absl::StrFormat("beta=%g not in (0,1]", beta));
  }
  const Slots k = static_cast<Slots>(std::floor(1.0 / beta + 1e-12));
  if (k > kMaxSupportDuration) {
    return MakeError(ErrorKind::kInvalidBeta,
                     absl::StrFormat("beta=%g needs more than %d slots", beta,
                                     kMaxSupportDuration));
  }
  std::vector<PmfEntry> entries;
  entries.reserve(static_cast<std::size_t>(k + 1));
  for (Slots s = 1; s <= k; ++s) entries.push_back({s, beta});
  const double remainder = 1.0 - static_cast<double>(k) * beta;
  if (remainder >= 1e-12) entries.push_back({k + 1, remainder});
  return MakePmf(entries);
}

absl::StatusOr<DitherPolicy> DdadPolicy(double target_rate) {
  AGELEAK_RETURN_IF_ERROR(ValidateRate(target_rate));
  DitherPolicy out;
  out.target_rate = target_rate;
  out.z0 = std::exp2(target_rate);
  const double period = 1.0 / target_rate;
  const double nearest = std::round(period);
  if (std::abs(period - nearest) <= kIntegerPeriodTolerance) {
    out.i = static_cast<Slots>(nearest);
    out.j = out.i + 1;
    out.p_i = 1.0;
    out.p_j = 0.0;
    return out;
  }
  out.i = static_cast<Slots>(std::floor(period));
  out.j = out.i + 1;
  const double xi = std::pow(out.z0, -static_cast<double>(out.i));
  const double xj = std::pow(out.z0, -static_cast<double>(out.j));
  out.p_i = (0.5 - xj) / (xi - xj);
  out.p_j = 1.0 - out.p_i;
  return out;
}

absl::StatusOr<DitherPolicy> DadAsDither(Slots tau) {
  if (tau < 1) return MakeError(ErrorKind::kInvalidTau, "tau must be >= 1");
  DitherPolicy out;
  out.i = tau;
  out.j = tau + 1;
  out.p_i = 1.0;
  out.p_j = 0.0;
  out.target_rate = 1.0 / static_cast<double>(tau);
  out.z0 = std::exp2(out.target_rate);
  return out;
}

DinkelbachCertificate DinkelbachCertify(const DitherPolicy& policy) {
  const double di = static_cast<double>(policy.i);
  const double dj = static_cast<double>(policy.j);
  const double mean = policy.p_i * di + policy.p_j * dj;
  const double second = policy.p_i * di * di + policy.p_j * dj * dj;
  DinkelbachCertificate cert;
  cert.gamma_star = second / mean;
  cert.residual = std::abs(second - cert.gamma_star * mean);
  if (policy.is_deterministic()) {
    cert.sandwich_ok = std::abs(cert.gamma_star - di) <= 1e-12;
  } else {
    cert.sandwich_ok = di < cert.gamma_star && cert.gamma_star < dj;
  }
  cert.convexity_ok = cert.gamma_star < 2.0 + 2.0 / std::log2(policy.z0);
  return cert;
}

absl::StatusOr<TwoPointSearchResult> SearchTwoPointOptimum(
    double target_rate, Slots search_d_max) {
  AGELEAK_RETURN_IF_ERROR(ValidateRate(target_rate));
  if (search_d_max < 1 || search_d_max > kMaxSearchSupport) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("search_d_max=%d not in [1,%d]",
                                     search_d_max, kMaxSearchSupport));
  }
  AGELEAK_ASSIGN_OR_RETURN(DitherPolicy policy, DdadPolicy(target_rate));
  TwoPointSearchResult result;
  result.ddad_ratio = DinkelbachCertify(policy).gamma_star;

  const std::vector<Vertex> vertices =
      FeasibleVertices(policy.z0, search_d_max);
  result.vertices_checked = static_cast<int>(vertices.size());
  if (vertices.empty()) return result;

  result.best_vertex_ratio = std::numeric_limits<double>::infinity();
  for (const Vertex& v : vertices) {
    result.best_vertex_ratio = std::min(result.best_vertex_ratio, v.Ratio());
  }
  result.dinkelbach_gamma = DinkelbachOverVertices(vertices);

  const Slots support_end = policy.is_deterministic() ? policy.i : policy.j;
  result.optimal =
      support_end <= search_d_max &&
      result.best_vertex_ratio >= result.ddad_ratio - kRatioSlack &&
      std::abs(result.dinkelbach_gamma - result.ddad_ratio) <= kRatioSlack;
  return result;
}

absl::StatusOr<bool> VerifyTwoPointOptimality(double target_rate,
                                              Slots search_d_max) {
  AGELEAK_ASSIGN_OR_RETURN(TwoPointSearchResult r,
                           SearchTwoPointOptimum(target_rate, search_d_max));
  return r.optimal;
}

absl::StatusOr<AlphaChoice> OptimalAlphaForFcfs(double lambda,
                                                const FinitePmf& service) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    return MakeError(ErrorKind::kInvalidLambda,
                     absl::StrFormat("lambda=%g not in (0,1]", lambda));
  }
  const double mean = PmfMoments(service).mean;
  const double hi = std::min(1.0, (1.0 - kAlphaEpsilon) / (lambda * mean));
  return MinimizeOverAlpha(
      hi, [&](double a) { return FcfsAge(lambda, service, a); });
}

absl::StatusOr<AlphaChoice> OptimalAlphaForMbt(double lambda, double mu) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    return MakeError(ErrorKind::kInvalidLambda,
                     absl::StrFormat("lambda=%g not in (0,1]", lambda));
  }
  if (!(mu > 0.0 && mu <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("mu=%g not in (0,1]", mu));
  }
  const double hi = std::min(1.0, (1.0 - kAlphaEpsilon) * mu / lambda);
  return MinimizeOverAlpha(hi,
                           [&](double a) { return MbtAge(a, mu, lambda); });
}

}  // namespace ageleak
