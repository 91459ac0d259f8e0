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

#include "ageleak/pmf.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "ageleak/json_io.h"
#include "ageleak/status.h"

namespace ageleak {

double FinitePmf::at(Slots duration) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), duration,
      [](const PmfEntry& e, Slots d) { return e.duration < d; });
  if (it == entries_.end() || it->duration != duration) return 0.0;
  return it->probability;
}

double FinitePmf::tail(Slots duration) const {
  double mass = 0.0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->duration <= duration) break;
    mass += it->probability;
  }
  return mass;
}

absl::StatusOr<FinitePmf> MakePmf(std::span<const PmfEntry> entries) {
  if (entries.empty()) {
    return MakeError(ErrorKind::kEmptyPmf, "pmf needs at least one entry");
  }
  std::vector<PmfEntry> sorted(entries.begin(), entries.end());
  double mass = 0.0;
  for (const PmfEntry& e : sorted) {
    if (e.duration < 1) {
      return MakeError(ErrorKind::kNonPositiveDuration,
                       absl::StrFormat("duration %d < 1", e.duration));
    }
    if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) {
      return MakeError(ErrorKind::kNegativeProbability,
                       absl::StrFormat("probability %g at duration %d",
                                       e.probability, e.duration));
    }
    mass += e.probability;
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const PmfEntry& a, const PmfEntry& b) {
                     return a.duration < b.duration;
                   });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].duration == sorted[i - 1].duration) {
      return MakeError(ErrorKind::kDuplicateDuration,
                       absl::StrFormat("duration %d listed twice",
                                       sorted[i].duration));
    }
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    return MakeError(ErrorKind::kUnnormalizedMass,
                     absl::StrFormat("mass sums to %.17g", mass));
  }
  std::erase_if(sorted, [](const PmfEntry& e) { return e.probability == 0.0; });
  if (sorted.empty()) {
    return MakeError(ErrorKind::kEmptyPmf, "no positive-mass entries");
  }
  return FinitePmf(std::move(sorted));
}

Moments PmfMoments(const FinitePmf& pmf) {
  Moments m;
  for (const PmfEntry& e : pmf.entries()) {
    const double d = static_cast<double>(e.duration);
    m.mean += e.probability * d;
    m.second_moment += e.probability * d * d;
  }
  m.variance = m.second_moment - m.mean * m.mean;
  return m;
}

SmpCheck IsSmp(const FinitePmf& pmf) {
  SmpCheck check;
  check.s_min = pmf.min_duration();
  const double head = pmf.entries().front().probability;
  check.smp = std::all_of(pmf.entries().begin(), pmf.entries().end(),
                          [head](const PmfEntry& e) {
                            return e.probability <= head;
                          });
  return check;
}

absl::StatusOr<FinitePmf> GeometricPmf(double mu, Slots d_max,
                                       bool allow_heavy_tail) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("geometric parameter %g not in (0,1]", mu));
  }
  if (d_max < 1) {
    return MakeError(ErrorKind::kNonPositiveDuration, "d_max must be >= 1");
  }
  const double q = 1.0 - mu;
  const double tail = std::pow(q, static_cast<double>(d_max));
  if (tail > kGeometricTailBound && !allow_heavy_tail) {
    return MakeError(
        ErrorKind::kTailTooHeavy,
        absl::StrFormat("tail mass %g beyond d_max=%d", tail, d_max));
  }
  std::vector<PmfEntry> entries;
  entries.reserve(static_cast<std::size_t>(d_max));
  double q_pow = 1.0;  // (1-mu)^(d-1)
  for (Slots d = 1; d <= d_max; ++d) {
    entries.push_back({d, q_pow * mu});
    q_pow *= q;
  }
  entries.back().probability += tail;
  return MakePmf(entries);
}

absl::StatusOr<FinitePmf> GeometricPmf(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("geometric parameter %g not in (0,1]", mu));
  }
  if (mu == 1.0) return GeometricPmf(mu, 1);
  const double needed =
      std::ceil(std::log(kGeometricTailBound) / std::log1p(-mu));
  if (needed > static_cast<double>(kMaxSupportDuration)) {
    return MakeError(ErrorKind::kTailTooHeavy,
                     absl::StrFormat("mu=%g needs d_max=%g > %d", mu, needed,
                                     kMaxSupportDuration));
  }
  Slots d_max = std::max<Slots>(1, static_cast<Slots>(needed));
  // log1p rounding can leave the tail a hair above the bound.
  while (std::pow(1.0 - mu, static_cast<double>(d_max)) > kGeometricTailBound)
    ++d_max;
  return GeometricPmf(mu, d_max);
}

absl::StatusOr<FinitePmf> UniformPmf(Slots k) {
  if (k < 1) {
    return MakeError(ErrorKind::kNonPositiveDuration,
                     absl::StrFormat("uniform support size %d < 1", k));
  }
  std::vector<PmfEntry> entries;
  entries.reserve(static_cast<std::size_t>(k));
  for (Slots d = 1; d <= k; ++d) {
    entries.push_back({d, 1.0 / static_cast<double>(k)});
  }
  return MakePmf(entries);
}

absl::StatusOr<FinitePmf> DeterministicPmf(Slots tau) {
  const PmfEntry entry{tau, 1.0};
  return MakePmf(std::span<const PmfEntry>(&entry, 1));
}

absl::StatusOr<FinitePmf> ShiftPmf(const FinitePmf& pmf, Slots offset) {
  std::vector<PmfEntry> entries(pmf.entries().begin(), pmf.entries().end());
  for (PmfEntry& e : entries) e.duration += offset;
  return MakePmf(entries);
}

std::string PmfToJson(const FinitePmf& pmf) {
  return PmfToJsonValue(pmf).dump();
}

absl::StatusOr<FinitePmf> PmfFromJson(const std::string& text) {
  nlohmann::json value = nlohmann::json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    return MakeError(ErrorKind::kParseError, "pmf JSON is malformed");
  }
  return PmfFromJsonValue(value);
}

}  // namespace ageleak
