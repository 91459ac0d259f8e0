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

// Finite probability mass functions on positive slot counts. These back
// both service-time distributions (coupled servers) and inter-dump
// distributions (accumulate-and-dump servers).

#ifndef AGELEAK_PMF_H_
#define AGELEAK_PMF_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace ageleak {

// Durations are whole slots, always >= 1.
using Slots = std::int64_t;

// Mass-sum tolerance accepted by MakePmf.
inline constexpr double kMassTolerance = 1e-9;

// Default tail bound for geometric truncation.
inline constexpr double kGeometricTailBound = 1e-12;

// Upper limit on any support point built by the helpers below.
inline constexpr Slots kMaxSupportDuration = 10'000;

struct PmfEntry {
  Slots duration = 1;
  double probability = 0.0;

  friend bool operator==(const PmfEntry&, const PmfEntry&) = default;
};

struct Moments {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
};

// Immutable pmf with finite, nonempty support. Entries are sorted by
// duration and only positive-mass points are stored.
class FinitePmf {
 public:
  std::span<const PmfEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  Slots min_duration() const { return entries_.front().duration; }
  Slots max_duration() const { return entries_.back().duration; }

  // g(d); zero off the support.
  double at(Slots duration) const;

  // P(D > d).
  double tail(Slots duration) const;

  friend bool operator==(const FinitePmf&, const FinitePmf&) = default;

 private:
  friend absl::StatusOr<FinitePmf> MakePmf(std::span<const PmfEntry>);
  explicit FinitePmf(std::vector<PmfEntry> entries)
      : entries_(std::move(entries)) {}

  std::vector<PmfEntry> entries_;
};

// Validates and normalizes the entry order. Zero-probability entries are
// dropped. Errors: EmptyPmf, NegativeProbability, UnnormalizedMass,
// NonPositiveDuration, DuplicateDuration.
absl::StatusOr<FinitePmf> MakePmf(std::span<const PmfEntry> entries);

Moments PmfMoments(const FinitePmf& pmf);

struct SmpCheck {
  bool smp = false;
  Slots s_min = 1;
};

// Shortest-most-probable predicate: the smallest supported duration also
// carries the largest mass.
SmpCheck IsSmp(const FinitePmf& pmf);

// Truncated geometric pmf (1-mu)^(d-1) mu on {1..d_max}. The tail beyond
// d_max is added to d_max so g(1) stays exact. Fails with TailTooHeavy when
// the folded tail exceeds kGeometricTailBound, unless `allow_heavy_tail`.
absl::StatusOr<FinitePmf> GeometricPmf(double mu, Slots d_max,
                                       bool allow_heavy_tail = false);

// Geometric pmf with the smallest d_max whose tail is below
// kGeometricTailBound. TailTooHeavy if that needs more than
// kMaxSupportDuration slots.
absl::StatusOr<FinitePmf> GeometricPmf(double mu);

// Uniform on {1..k}.
absl::StatusOr<FinitePmf> UniformPmf(Slots k);

// Point mass at tau.
absl::StatusOr<FinitePmf> DeterministicPmf(Slots tau);

// Translates the whole support by `offset` slots (which may be negative as
// long as the minimum stays >= 1).
absl::StatusOr<FinitePmf> ShiftPmf(const FinitePmf& pmf, Slots offset);

// JSON form: {"entries": [[duration, probability], ...]}.
std::string PmfToJson(const FinitePmf& pmf);
absl::StatusOr<FinitePmf> PmfFromJson(const std::string& text);

}  // namespace ageleak

#endif  // AGELEAK_PMF_H_
