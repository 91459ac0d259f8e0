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

#include "ageleak/tradeoff.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_format.h"
#include "ageleak/age.h"
#include "ageleak/leakage.h"
#include "ageleak/optimizer.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

constexpr double kBaselineRelTolerance = 1e-12;

absl::StatusOr<FinitePmf> GeometricMean(double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean %g < 1", tau));
  }
  return GeometricPmf(1.0 / tau);
}

absl::StatusOr<Slots> IntegerTau(double tau) {
  if (!(tau >= 1.0) || tau != std::floor(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("dump period %g is not an integer >= 1",
                                     tau));
  }
  return static_cast<Slots>(tau);
}

absl::StatusOr<FinitePmf> UniformWithMean(double tau) {
  const double k = 2.0 * tau - 1.0;
  if (!(k >= 1.0) || k != std::floor(k)) {
    return MakeError(ErrorKind::kNonHalfIntegerTau,
                     absl::StrFormat("tau=%g is not a half-integer >= 1", tau));
  }
  return UniformPmf(static_cast<Slots>(k));
}

absl::Status UnknownFamily(std::string_view family) {
  return MakeError(ErrorKind::kInvalidArgument,
                   absl::StrFormat("unknown policy family \"%s\"", std::string(family)));
}

// A point plus the admission probability actually used, so a simulation
// can rebuild the same server.
struct Evaluated {
  TradeoffPoint point;
  double alpha = 1.0;
};

absl::StatusOr<double> GeometricMu(double tau) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) {
    return MakeError(ErrorKind::kInvalidTau,
                     absl::StrFormat("mean %g < 1", tau));
  }
  return 1.0 / tau;
}

// E[D^2] / (2 E[D]) + 1/2 for the dump period; added to the source age.
double DumpAgeTerm(const Moments& m) {
  return m.second_moment / (2.0 * m.mean) + 0.5;
}

Moments GeometricMoments(double mu) {
  Moments m;
  m.mean = 1.0 / mu;
  m.second_moment = (2.0 - mu) / (mu * mu);
  m.variance = (1.0 - mu) / (mu * mu);
  return m;
}

absl::StatusOr<double> RadFamilyAge(const SourceModel& source,
                                    const Moments& dump) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) {
    if (!(b->lambda > 0.0 && b->lambda <= 1.0)) {
      return MakeError(ErrorKind::kInvalidLambda,
                       absl::StrFormat("lambda=%g not in (0,1]", b->lambda));
    }
    return 1.0 / b->lambda + DumpAgeTerm(dump);
  }
  AGELEAK_ASSIGN_OR_RETURN(AgeResult source_age,
                           MarkovSourceAge(std::get<MarkovSource>(source)));
  return source_age.delta + DumpAgeTerm(dump);
}

absl::StatusOr<double> BernoulliRate(const SourceModel& source,
                                     std::string_view family) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) return b->lambda;
  return MakeError(
      ErrorKind::kInvalidArgument,
      absl::StrFormat("family %s has no closed-form age under a Markov "
                      "source; use simulate",
                      std::string(family)));
}

absl::StatusOr<Evaluated> Evaluate(std::string_view family, double param,
                                   const SourceModel& source, double alpha) {
  double delta = 0.0;
  double rate = 0.0;
  std::optional<double> leak_time;
  double used_alpha = alpha;

  if (family == "lcfs-greedy") {
    AGELEAK_ASSIGN_OR_RETURN(double lambda, BernoulliRate(source, family));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(param));
    AGELEAK_ASSIGN_OR_RETURN(AgeResult age, LcfsAge(lambda, pmf));
    AGELEAK_ASSIGN_OR_RETURN(RateBounds b, SmpRateBounds(1, param));
    delta = age.delta;
    rate = b.upper;
  } else if (family == "lcfs-geo") {
    AGELEAK_ASSIGN_OR_RETURN(double mu, GeometricMu(param));
    if (const auto* m = std::get_if<MarkovSource>(&source)) {
      AGELEAK_ASSIGN_OR_RETURN(
          AgeResult age,
          MarkovMonitorAge(*m, MarkovServer::kLcfsGeometric, param));
      delta = age.delta;
    } else {
      const double lambda = std::get<BernoulliSource>(source).lambda;
      if (!(lambda > 0.0 && lambda <= 1.0)) {
        return MakeError(ErrorKind::kInvalidLambda,
                         absl::StrFormat("lambda=%g not in (0,1]", lambda));
      }
      // E[(1-lambda)^(S-1)] for geometric S, without truncating the tail.
      const double delivered = mu / (1.0 - (1.0 - mu) * (1.0 - lambda));
      delta = 1.0 + 1.0 / (lambda * delivered);
    }
    AGELEAK_ASSIGN_OR_RETURN(rate, GeometricRadRate(param));
  } else if (family == "fcfs-greedy" || family == "fcfs-greedy-thinned") {
    AGELEAK_ASSIGN_OR_RETURN(double lambda, BernoulliRate(source, family));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(param));
    if (family == "fcfs-greedy-thinned") {
      AGELEAK_ASSIGN_OR_RETURN(AlphaChoice best,
                               OptimalAlphaForFcfs(lambda, pmf));
      used_alpha = best.alpha;
    }
    AGELEAK_ASSIGN_OR_RETURN(AgeResult age, FcfsAge(lambda, pmf, used_alpha));
    AGELEAK_ASSIGN_OR_RETURN(RateBounds b, SmpRateBounds(1, param));
    delta = age.delta;
    rate = b.upper;
  } else if (family == "fcfs-geo" || family == "mbt") {
    AGELEAK_ASSIGN_OR_RETURN(double lambda, BernoulliRate(source, family));
    if (!(param > 0.0 && param <= 1.0)) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrFormat("mu=%g not in (0,1]", param));
    }
    if (family == "mbt") {
      AGELEAK_ASSIGN_OR_RETURN(AlphaChoice best,
                               OptimalAlphaForMbt(lambda, param));
      used_alpha = best.alpha;
    }
    AGELEAK_ASSIGN_OR_RETURN(AgeResult age, MbtAge(used_alpha, param, lambda));
    delta = age.delta;
    rate = std::log2(1.0 + param);
  } else if (family == "dad") {
    AGELEAK_ASSIGN_OR_RETURN(Slots tau, IntegerTau(param));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, DeterministicPmf(tau));
    AGELEAK_ASSIGN_OR_RETURN(delta, RadFamilyAge(source, PmfMoments(pmf)));
    rate = 1.0 / static_cast<double>(tau);
    leak_time = static_cast<double>(tau);
  } else if (family == "ddad") {
    AGELEAK_ASSIGN_OR_RETURN(DitherPolicy dither, DdadPolicy(param));
    AGELEAK_ASSIGN_OR_RETURN(delta,
                             RadFamilyAge(source, PmfMoments(dither.ToPmf())));
    rate = param;
  } else if (family == "rad-geo") {
    AGELEAK_ASSIGN_OR_RETURN(double mu, GeometricMu(param));
    AGELEAK_ASSIGN_OR_RETURN(delta, RadFamilyAge(source, GeometricMoments(mu)));
    AGELEAK_ASSIGN_OR_RETURN(rate, GeometricRadRate(param));
  } else if (family == "rad-uniform") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, UniformWithMean(param));
    AGELEAK_ASSIGN_OR_RETURN(delta, RadFamilyAge(source, PmfMoments(pmf)));
    AGELEAK_ASSIGN_OR_RETURN(rate, UniformRadRate(param));
  } else {
    return UnknownFamily(family);
  }

  TradeoffPoint p;
  p.policy_tag = std::string(family);
  p.param = param;
  p.lambda = SourceRate(source);
  p.source = SourceLabel(source);
  p.delta = delta;
  p.rate_bits = rate;
  if (leak_time.has_value()) {
    p.leak_time = *leak_time;
  } else {
    AGELEAK_ASSIGN_OR_RETURN(p.leak_time, LeakageTime(rate));
  }
  AGELEAK_ASSIGN_OR_RETURN(double baseline, BaselineAge(source));
  auto eta = EfficiencyAgainst(p, baseline);
  if (eta.ok()) {
    p.eta = *eta;
  } else if (GetErrorKind(eta) != ErrorKind::kBaselinePoint) {
    return eta.status();
  }
  return Evaluated{std::move(p), used_alpha};
}

std::vector<TradeoffPoint> SortedByDelta(std::vector<TradeoffPoint> s) {
  std::stable_sort(s.begin(), s.end(),
                   [](const auto& a, const auto& b) { return a.delta < b.delta; });
  return s;
}

// Linear interpolation of T at delta; `s` is sorted and covers delta.
double InterpolateLeakTime(const std::vector<TradeoffPoint>& s, double delta) {
  auto hi = std::lower_bound(
      s.begin(), s.end(), delta,
      [](const TradeoffPoint& p, double d) { return p.delta < d; });
  if (hi == s.end()) return s.back().leak_time;
  if (hi == s.begin() || hi->delta == delta) return hi->leak_time;
  auto lo = std::prev(hi);
  const double w = (delta - lo->delta) / (hi->delta - lo->delta);
  return lo->leak_time + w * (hi->leak_time - lo->leak_time);
}

// absl's split works on its own string_view type here, so split by hand.
std::vector<std::string_view> Split(std::string_view text, char sep,
                                    bool skip_empty = false) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    std::string_view piece = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos
                                             : end - start);
    if (!skip_empty || !piece.empty()) out.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string QuoteField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

absl::StatusOr<std::vector<std::string>> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) return MakeError(ErrorKind::kParseError, "unterminated quote");
  return fields;
}

absl::StatusOr<double> ParseDouble(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("bad number \"%s\"", std::string(s)));
  }
  return v;
}

absl::StatusOr<std::optional<double>> ParseOptional(std::string_view s) {
  if (s.empty()) return std::optional<double>();
  AGELEAK_ASSIGN_OR_RETURN(double v, ParseDouble(s));
  return std::optional<double>(v);
}

}  // namespace

const std::vector<std::string>& PolicyFamilies() {
  static const auto* kFamilies = new std::vector<std::string>{
      "lcfs-greedy", "lcfs-geo", "fcfs-greedy", "fcfs-greedy-thinned",
      "fcfs-geo",    "mbt",      "dad",         "ddad",
      "rad-geo",     "rad-uniform"};
  return *kFamilies;
}

absl::StatusOr<Policy> FamilyPolicy(std::string_view family, double param,
                                    double alpha) {
  if (family == "fcfs-greedy" || family == "fcfs-greedy-thinned") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(param));
    return FcfsPolicy{std::move(pmf), alpha};
  }
  if (family == "fcfs-geo" || family == "mbt") {
    if (!(param > 0.0 && param <= 1.0)) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrFormat("mu=%g not in (0,1]", param));
    }
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GeometricPmf(param));
    return FcfsPolicy{std::move(pmf), alpha};
  }
  if (family == "lcfs-greedy") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(param));
    return LcfsPolicy{std::move(pmf)};
  }
  if (family == "lcfs-geo") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GeometricMean(param));
    return LcfsPolicy{std::move(pmf)};
  }
  if (family == "dad") {
    AGELEAK_ASSIGN_OR_RETURN(Slots tau, IntegerTau(param));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, DeterministicPmf(tau));
    return RadPolicy{std::move(pmf)};
  }
  if (family == "ddad") {
    AGELEAK_ASSIGN_OR_RETURN(DitherPolicy dither, DdadPolicy(param));
    return RadPolicy{dither.ToPmf()};
  }
  if (family == "rad-geo") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GeometricMean(param));
    return RadPolicy{std::move(pmf)};
  }
  if (family == "rad-uniform") {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, UniformWithMean(param));
    return RadPolicy{std::move(pmf)};
  }
  return UnknownFamily(family);
}

absl::StatusOr<double> BaselineAge(const SourceModel& source) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) {
    if (!(b->lambda > 0.0 && b->lambda <= 1.0)) {
      return MakeError(ErrorKind::kInvalidLambda,
                       absl::StrFormat("lambda=%g not in (0,1]", b->lambda));
    }
    return 1.0 + 1.0 / b->lambda;
  }
  AGELEAK_ASSIGN_OR_RETURN(AgeResult a,
                           MarkovSourceAge(std::get<MarkovSource>(source)));
  return a.delta + 1.0;
}

absl::StatusOr<double> EfficiencyAgainst(const TradeoffPoint& point,
                                         double baseline_delta) {
  const double gap = point.delta - baseline_delta;
  if (std::abs(gap) <= kBaselineRelTolerance * baseline_delta) {
    return MakeError(ErrorKind::kBaselinePoint,
                     "efficiency is undefined at the zero-delay point");
  }
  return (point.leak_time - 1.0) / gap;
}

absl::StatusOr<double> Efficiency(const TradeoffPoint& point, double lambda) {
  AGELEAK_ASSIGN_OR_RETURN(double baseline,
                           BaselineAge(BernoulliSource{lambda}));
  return EfficiencyAgainst(point, baseline);
}

absl::StatusOr<TradeoffPoint> EvaluatePoint(std::string_view family,
                                            double param,
                                            const SourceModel& source,
                                            double alpha) {
  AGELEAK_ASSIGN_OR_RETURN(Evaluated e, Evaluate(family, param, source, alpha));
  return std::move(e.point);
}

absl::StatusOr<Policy> ResolvePolicy(std::string_view family, double param,
                                     const SourceModel& source, double alpha) {
  if (family != "fcfs-greedy-thinned" && family != "mbt") {
    return FamilyPolicy(family, param, alpha);
  }
  AGELEAK_ASSIGN_OR_RETURN(Evaluated e, Evaluate(family, param, source, alpha));
  return FamilyPolicy(family, param, e.alpha);
}

absl::StatusOr<std::vector<TradeoffPoint>> Sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "parameter grid is empty");
  }
  std::vector<TradeoffPoint> out;
  out.reserve(spec.grid.size());
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    AGELEAK_ASSIGN_OR_RETURN(
        Evaluated e, Evaluate(spec.family, spec.grid[i], spec.source, spec.alpha));
    if (spec.sim_slots > 0) {
      AGELEAK_ASSIGN_OR_RETURN(
          Policy policy, FamilyPolicy(spec.family, spec.grid[i], e.alpha));
      SimConfig cfg{std::move(policy), spec.source};
      cfg.horizon = spec.sim_slots;
      cfg.warmup = spec.sim_warmup;
      cfg.seed = StreamSeed(spec.seed, i);
      AGELEAK_ASSIGN_OR_RETURN(SimStats s, Simulate(cfg));
      e.point.sim_delta = s.mean_age;
      e.point.sim_ci = s.ci_half_width;
    }
    out.push_back(std::move(e.point));
  }
  return out;
}

absl::StatusOr<std::vector<double>> ParseGrid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts = Split(text, ':');
    if (parts.size() != 3) {
      return MakeError(ErrorKind::kParseError,
                       "range grid must be start:stop:step");
    }
    AGELEAK_ASSIGN_OR_RETURN(double start, ParseDouble(parts[0]));
    AGELEAK_ASSIGN_OR_RETURN(double stop, ParseDouble(parts[1]));
    AGELEAK_ASSIGN_OR_RETURN(double step, ParseDouble(parts[2]));
    if (!(step > 0.0) || stop < start) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "range grid needs step > 0 and stop >= start");
    }
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e6) {
      return MakeError(ErrorKind::kInvalidArgument, "grid too large");
    }
    for (int k = 0; k <= static_cast<int>(count); ++k) {
      // Rounded to 12 significant digits so 0.1 steps land on 0.3, not
      // 0.30000000000000004.
      const double v = start + step * k;
      out.push_back(std::stod(absl::StrFormat("%.12g", v)));
    }
  } else {
    for (std::string_view part : Split(text, ',')) {
      AGELEAK_ASSIGN_OR_RETURN(double v, ParseDouble(part));
      out.push_back(v);
    }
  }
  if (out.empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "parameter grid is empty");
  }
  return out;
}

absl::StatusOr<bool> DominanceCheck(const std::vector<TradeoffPoint>& a,
                                    const std::vector<TradeoffPoint>& b,
                                    std::optional<DeltaRange> range) {
  if (a.empty() || b.empty()) {
    return MakeError(ErrorKind::kNoOverlap, "empty series");
  }
  const auto sa = SortedByDelta(a);
  const auto sb = SortedByDelta(b);
  double lo = std::max(sa.front().delta, sb.front().delta);
  double hi = std::min(sa.back().delta, sb.back().delta);
  if (range.has_value()) {
    lo = std::max(lo, range->lo);
    hi = std::min(hi, range->hi);
  }
  if (lo > hi) {
    return MakeError(ErrorKind::kNoOverlap,
                     absl::StrFormat("no common delta range (%g > %g)", lo, hi));
  }
  std::vector<double> grid = {lo, hi};
  for (const auto* s : {&sa, &sb}) {
    for (const TradeoffPoint& p : *s) {
      if (p.delta >= lo && p.delta <= hi) grid.push_back(p.delta);
    }
  }
  for (double d : grid) {
    if (InterpolateLeakTime(sa, d) <
        InterpolateLeakTime(sb, d) - kDominanceTolerance) {
      return false;
    }
  }
  return true;
}

absl::StatusOr<double> AsymptoticSlope(const std::vector<TradeoffPoint>& series,
                                       double tail_fraction) {
  if (series.size() < static_cast<std::size_t>(kMinSlopePoints)) {
    return MakeError(ErrorKind::kTooFewPoints,
                     absl::StrFormat("need at least %d points, got %d",
                                     kMinSlopePoints, series.size()));
  }
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrFormat("tail fraction %g not in (0,1]",
                                     tail_fraction));
  }
  const auto sorted = SortedByDelta(series);
  const std::size_t take = std::max<std::size_t>(
      2, static_cast<std::size_t>(
             std::ceil(tail_fraction * static_cast<double>(sorted.size()))));
  const std::size_t first = sorted.size() - std::min(take, sorted.size());
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(sorted.size() - first);
  for (std::size_t i = first; i < sorted.size(); ++i) {
    mx += sorted[i].delta;
    my += sorted[i].leak_time;
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = first; i < sorted.size(); ++i) {
    sxy += (sorted[i].delta - mx) * (sorted[i].leak_time - my);
    sxx += (sorted[i].delta - mx) * (sorted[i].delta - mx);
  }
  if (!(sxx > 0.0)) {
    return MakeError(ErrorKind::kTooFewPoints,
                     "tail points share a single delta");
  }
  return sxy / sxx;
}

std::string TradeoffCsvHeader() {
  return "policy_tag,param,lambda,source,delta,rate_bits,leak_time,eta,"
         "sim_delta,sim_ci";
}

std::string ToCsv(const std::vector<TradeoffPoint>& points) {
  std::string out = TradeoffCsvHeader() + "\n";
  auto opt = [](const std::optional<double>& v) {
    return v.has_value() ? FormatDouble(*v) : std::string();
  };
  for (const TradeoffPoint& p : points) {
    out += absl::StrFormat(
        "%s,%s,%s,%s,%s,%s,%s,%s,%s,%s\n", QuoteField(p.policy_tag),
        FormatDouble(p.param), FormatDouble(p.lambda), QuoteField(p.source),
        FormatDouble(p.delta), FormatDouble(p.rate_bits),
        FormatDouble(p.leak_time), opt(p.eta), opt(p.sim_delta),
        opt(p.sim_ci));
  }
  return out;
}

absl::StatusOr<std::vector<TradeoffPoint>> FromCsv(std::string_view text) {
  std::vector<std::string_view> lines =
      Split(text, '\n', /*skip_empty=*/true);
  if (lines.empty() || lines.front() != TradeoffCsvHeader()) {
    return MakeError(ErrorKind::kParseError, "missing or wrong CSV header");
  }
  std::vector<TradeoffPoint> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    AGELEAK_ASSIGN_OR_RETURN(std::vector<std::string> f,
                             SplitCsvLine(lines[i]));
    if (f.size() != 10) {
      return MakeError(ErrorKind::kParseError,
                       absl::StrFormat("line %d has %d fields", i + 1,
                                       f.size()));
    }
    TradeoffPoint p;
    p.policy_tag = f[0];
    AGELEAK_ASSIGN_OR_RETURN(p.param, ParseDouble(f[1]));
    AGELEAK_ASSIGN_OR_RETURN(p.lambda, ParseDouble(f[2]));
    p.source = f[3];
    AGELEAK_ASSIGN_OR_RETURN(p.delta, ParseDouble(f[4]));
    AGELEAK_ASSIGN_OR_RETURN(p.rate_bits, ParseDouble(f[5]));
    AGELEAK_ASSIGN_OR_RETURN(p.leak_time, ParseDouble(f[6]));
    AGELEAK_ASSIGN_OR_RETURN(p.eta, ParseOptional(f[7]));
    AGELEAK_ASSIGN_OR_RETURN(p.sim_delta, ParseOptional(f[8]));
    AGELEAK_ASSIGN_OR_RETURN(p.sim_ci, ParseOptional(f[9]));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ageleak
