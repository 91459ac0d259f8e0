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

#include "ageleak/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "ageleak/age.h"
#include "ageleak/leakage.h"
#include "ageleak/optimizer.h"
#include "ageleak/oracle.h"
#include "ageleak/pmf.h"
#include "ageleak/policy.h"
#include "ageleak/simulator.h"
#include "ageleak/status.h"
#include "ageleak/tradeoff.h"

namespace ageleak {
namespace {

// Pinned tolerances.
constexpr double kOracleTolerance = 1e-9;
constexpr double kCoupledOracleSeconds = 60.0;
constexpr double kFibonacciRateTolerance = 1e-3;
constexpr double kRateIdentityTolerance = 1e-10;
constexpr double kBisectionResidual = 1e-12;
constexpr double kSimCiMultiple = 3.0;
constexpr double kSimRelTolerance = 0.02;
constexpr std::int64_t kSimSlots = 1'000'000;
constexpr std::int64_t kSimWarmup = 10'000;
constexpr int kExchangeSamples = 200;
constexpr double kDitherTolerance = 1e-9;
constexpr double kEfficiencyTolerance = 1e-12;
constexpr double kSlopeTolerance = 0.02;
constexpr double kFlatSlopeBound = 0.05;
constexpr double kTailFraction = 0.2;
constexpr double kLambda = 0.5;

const char* YesNo(bool b) { return b ? "yes" : "no"; }

struct Outcome {
  bool passed = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       since)
      .count();
}

absl::StatusOr<Outcome> CoupledOracle() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int cases = 0;
  for (double beta : {0.3, 0.5, 1.0}) {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(beta));
    for (const Policy& policy :
         {Policy(LcfsPolicy{pmf}), Policy(FcfsPolicy{pmf})}) {
      for (int n = 1; n <= 10; ++n) {
        AGELEAK_ASSIGN_OR_RETURN(LeakageResult closed,
                                 SmpLeakageBits(n, 1, beta));
        AGELEAK_ASSIGN_OR_RETURN(LeakageResult brute,
                                 BruteForceMaxl(policy, n));
        worst = std::max(worst, std::abs(closed.bits - brute.bits));
        ++cases;
      }
    }
  }
  const double elapsed = Seconds(start);
  return Outcome{worst <= kOracleTolerance && elapsed < kCoupledOracleSeconds,
                 absl::StrFormat("max |oracle - closed form| = %.3g over %d "
                                 "cases in %.2f s",
                                 worst, cases, elapsed)};
}

absl::StatusOr<Outcome> DecoupledOracle() {
  std::vector<std::pair<std::string, FinitePmf>> dumps;
  for (Slots tau : {1, 2, 3}) {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, DeterministicPmf(tau));
    dumps.emplace_back(absl::StrFormat("dad%d", tau), std::move(pmf));
  }
  for (Slots k : {2, 3}) {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, UniformPmf(k));
    dumps.emplace_back(absl::StrFormat("uniform%d", k), std::move(pmf));
  }
  {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GeometricPmf(0.5));
    dumps.emplace_back("geometric0.5", std::move(pmf));
  }
  double worst = 0.0;
  std::string worst_case = "none";
  int cases = 0;
  for (const auto& [label, pmf] : dumps) {
    const Policy policy = RadPolicy{pmf};
    for (int n = 1; n <= 12; ++n) {
      AGELEAK_ASSIGN_OR_RETURN(LeakageResult brute, BruteForceMaxl(policy, n));
      const double err = std::abs(brute.bits - RadLeakageBits(n, pmf).bits);
      if (err > worst) {
        worst = err;
        worst_case = absl::StrFormat("%s n=%d", label, n);
      }
      ++cases;
    }
  }
  return Outcome{worst <= kOracleTolerance,
                 absl::StrFormat("max |oracle - recursion| = %.3g (%s) over "
                                 "%d cases",
                                 worst, worst_case, cases)};
}

absl::StatusOr<Outcome> FibonacciLeakage() {
  std::uint64_t prev = 1, cur = 1;  // N_0, N_1
  int bad = 0;
  for (int n = 1; n <= 30; ++n) {
    if (n >= 2) {
      const std::uint64_t next = prev + cur;
      prev = cur;
      cur = next;
    }
    AGELEAK_ASSIGN_OR_RETURN(LeakageResult r, SmpLeakageBits(n, 2, 1.0));
    const double count = std::exp2(r.bits);
    if (std::abs(count - static_cast<double>(cur)) >
        1e-9 * static_cast<double>(cur)) {
      ++bad;
    }
  }
  AGELEAK_ASSIGN_OR_RETURN(LeakageResult big, SmpLeakageBits(10'000, 2, 1.0));
  const double rate = big.bits / 10'000.0;
  const double target = std::log2(std::numbers::phi);
  const double gap = std::abs(rate - target);
  return Outcome{bad == 0 && gap <= kFibonacciRateTolerance,
                 absl::StrFormat("%d count mismatches for n<=30; rate at "
                                 "n=10000 is %.6f (log2 phi %.6f)",
                                 bad, rate, target)};
}

absl::StatusOr<Outcome> RateIdentities() {
  double worst_rate = 0.0;
  double worst_residual = 0.0;
  for (Slots tau = 1; tau <= 100; ++tau) {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf det, DeterministicPmf(tau));
    AGELEAK_ASSIGN_OR_RETURN(RateRoot a, RadRateRoot(det));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf geo,
                             GeometricPmf(1.0 / static_cast<double>(tau)));
    AGELEAK_ASSIGN_OR_RETURN(RateRoot b, RadRateRoot(geo));
    const double t = static_cast<double>(tau);
    worst_rate = std::max({worst_rate, std::abs(a.rate_bits - 1.0 / t),
                           std::abs(b.rate_bits - std::log2(1.0 + 1.0 / t))});
    worst_residual = std::max({worst_residual, a.residual, b.residual});
  }
  return Outcome{worst_rate <= kRateIdentityTolerance &&
                     worst_residual <= kBisectionResidual,
                 absl::StrFormat("max rate error %.3g, max residual %.3g",
                                 worst_rate, worst_residual)};
}

struct SimCase {
  std::string label;
  Policy policy;
  SourceModel source;
  double expected;
};

// One simulation against its closed form.
absl::StatusOr<std::pair<bool, std::string>> CheckSim(const SimCase& c,
                                                      std::uint64_t seed) {
  SimConfig cfg{c.policy, c.source};
  cfg.horizon = kSimSlots;
  cfg.warmup = kSimWarmup;
  cfg.seed = seed;
  AGELEAK_ASSIGN_OR_RETURN(SimStats s, Simulate(cfg));
  const double allowed = std::max(kSimCiMultiple * s.ci_half_width,
                                  kSimRelTolerance * c.expected);
  const bool ok = std::abs(s.mean_age - c.expected) <= allowed;
  return std::make_pair(
      ok, absl::StrFormat("%s %.4f vs %.4f", c.label, s.mean_age, c.expected));
}

absl::StatusOr<Outcome> AgeVsSimulation() {
  const SourceModel src = BernoulliSource{kLambda};
  AGELEAK_ASSIGN_OR_RETURN(FinitePmf geo25, GeometricPmf(0.25));
  AGELEAK_ASSIGN_OR_RETURN(FinitePmf dad5, DeterministicPmf(5));
  AGELEAK_ASSIGN_OR_RETURN(FinitePmf uni3, UniformPmf(3));
  AGELEAK_ASSIGN_OR_RETURN(FinitePmf geo50, GeometricPmf(0.5));
  AGELEAK_ASSIGN_OR_RETURN(FinitePmf geo75, GeometricPmf(0.75));

  AGELEAK_ASSIGN_OR_RETURN(AgeResult a_lcfs, LcfsAge(kLambda, geo25));
  AGELEAK_ASSIGN_OR_RETURN(AgeResult a_dad, RadAge(kLambda, dad5));
  AGELEAK_ASSIGN_OR_RETURN(AgeResult a_uni, RadAge(kLambda, uni3));
  AGELEAK_ASSIGN_OR_RETURN(AgeResult a_mbt, MbtAge(0.5, 0.5, kLambda));
  AGELEAK_ASSIGN_OR_RETURN(AgeResult a_fcfs, MbtAge(1.0, 0.75, kLambda));

  // The closed forms themselves must hit the reference values.
  const std::vector<std::pair<double, double>> refs = {
      {a_lcfs.delta, 6.0},       {a_dad.delta, 5.0},
      {a_uni.delta, 11.0 / 3.0}, {a_mbt.delta, 6.5},
      {a_fcfs.delta, 34.0 / 9.0}};
  bool refs_ok = true;
  for (const auto& [got, want] : refs) {
    refs_ok = refs_ok && std::abs(got - want) <= 1e-9;
  }

  const std::vector<SimCase> cases = {
      {"lcfs-geo", LcfsPolicy{geo25}, src, a_lcfs.delta},
      {"dad", RadPolicy{dad5}, src, a_dad.delta},
      {"uniform", RadPolicy{uni3}, src, a_uni.delta},
      {"mbt", FcfsPolicy{geo50, 0.5}, src, a_mbt.delta},
      {"fcfs-geo", FcfsPolicy{geo75, 1.0}, src, a_fcfs.delta},
  };
  bool ok = refs_ok;
  std::string detail = refs_ok ? "" : "closed form off reference; ";
  for (std::size_t i = 0; i < cases.size(); ++i) {
    AGELEAK_ASSIGN_OR_RETURN(auto r, CheckSim(cases[i], 101 + i));
    ok = ok && r.first;
    detail += (i ? "; " : "") + r.second;
  }
  return Outcome{ok, detail};
}

absl::StatusOr<Outcome> MarkovChecks() {
  const MarkovSource slow{0.05, 0.2};
  const MarkovSource fast{0.2, 0.05};
  const bool rates_ok = MarkovEffectiveRate(slow) == 0.2 &&
                        MarkovEffectiveRate(fast) == 0.8;
  AGELEAK_ASSIGN_OR_RETURN(AgeResult expected,
                           MarkovMonitorAge(slow, MarkovServer::kDad, 5.0));
  AGELEAK_ASSIGN_OR_RETURN(FinitePmf dad5, DeterministicPmf(5));
  AGELEAK_ASSIGN_OR_RETURN(
      auto sim, CheckSim({"markov dad5", RadPolicy{dad5}, slow, 20.0}, 201));
  const bool formula_ok = std::abs(expected.delta - 20.0) <= 1e-9;
  return Outcome{
      rates_ok && formula_ok && sim.first,
      absl::StrFormat("rates %.17g, %.17g; formula %.6f; %s",
                      MarkovEffectiveRate(slow), MarkovEffectiveRate(fast),
                      expected.delta, sim.second)};
}

// Random pmf with g(1) = beta and every other mass at most beta.
FinitePmf RandomSmpPmf(double beta, Slots max_d, std::mt19937_64& rng) {
  std::uniform_int_distribution<Slots> pick(2, max_d);
  std::uniform_real_distribution<double> chunk(0.0, beta);
  std::vector<double> mass(static_cast<std::size_t>(max_d + 1), 0.0);
  mass[1] = beta;
  double left = 1.0 - beta;
  while (left > 1e-12) {
    const auto d = static_cast<std::size_t>(pick(rng));
    const double room = beta - mass[d];
    if (room <= 0.0) continue;
    const double put = std::min({left, room, chunk(rng)});
    mass[d] += put;
    left -= put;
  }
  std::vector<PmfEntry> entries;
  for (Slots d = 1; d <= max_d; ++d) {
    if (mass[static_cast<std::size_t>(d)] > 0.0) {
      entries.push_back({d, mass[static_cast<std::size_t>(d)]});
    }
  }
  return *MakePmf(entries);
}

absl::StatusOr<Outcome> ExchangeProperty() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lambda_dist(0.05, 1.0);
  std::uniform_int_distribution<Slots> offset_dist(1, 3);
  int greedy_losses = 0;
  int shift_failures = 0;
  int non_smp = 0;
  double min_margin = 1e300;
  for (double beta : {0.25, 0.4}) {
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf greedy, GreedySmpPmf(beta));
    const Slots k = static_cast<Slots>(std::ceil(1.0 / beta));
    std::uniform_int_distribution<Slots> max_d_dist(k + 2, 15);
    for (int rep = 0; rep < kExchangeSamples; ++rep) {
      const double lambda = lambda_dist(rng);
      const FinitePmf pmf = RandomSmpPmf(beta, max_d_dist(rng), rng);
      if (!IsSmp(pmf).smp) ++non_smp;
      AGELEAK_ASSIGN_OR_RETURN(AgeResult g, LcfsAge(lambda, greedy));
      AGELEAK_ASSIGN_OR_RETURN(AgeResult c, LcfsAge(lambda, pmf));
      if (g.delta > c.delta + 1e-12) ++greedy_losses;
      min_margin = std::min(min_margin, c.delta - g.delta);

      AGELEAK_ASSIGN_OR_RETURN(FinitePmf shifted,
                               ShiftPmf(pmf, offset_dist(rng)));
      const SmpCheck check = IsSmp(shifted);
      if (!check.smp || check.s_min <= 1) ++non_smp;
      AGELEAK_ASSIGN_OR_RETURN(AgeResult s, LcfsAge(lambda, shifted));
      if (!(s.delta > c.delta)) ++shift_failures;
    }
  }
  return Outcome{
      greedy_losses == 0 && shift_failures == 0 && non_smp == 0,
      absl::StrFormat("%d pmfs: greedy beaten %d times (min margin %.3g); "
                      "shift not worse %d times; non-SMP samples %d",
                      2 * kExchangeSamples, greedy_losses, min_margin,
                      shift_failures, non_smp)};
}

absl::StatusOr<Outcome> DitheringOptimum() {
  AGELEAK_ASSIGN_OR_RETURN(DitherPolicy d, DdadPolicy(0.4));
  const FinitePmf pmf = d.ToPmf();
  AGELEAK_ASSIGN_OR_RETURN(double rate, RadRate(pmf));
  const DinkelbachCertificate cert = DinkelbachCertify(d);
  AGELEAK_ASSIGN_OR_RETURN(bool optimal, VerifyTwoPointOptimality(0.4, 8));
  const bool support_ok = pmf.size() == 2 && pmf.entries()[0].duration == 2 &&
                          pmf.entries()[1].duration == 3;
  const bool ok = support_ok && d.ConstraintResidual() <= kDitherTolerance &&
                  std::abs(rate - 0.4) <= kDitherTolerance &&
                  cert.gamma_star > 2.0 && cert.gamma_star < 3.0 &&
                  cert.residual <= kDitherTolerance && optimal;
  return Outcome{
      ok, absl::StrFormat("support {%d,%d} p_i=%.10f; constraint residual "
                          "%.3g; rate %.12f; gamma*=%.10f J=%.3g; "
                          "two-point search %s",
                          d.i, d.j, d.p_i, d.ConstraintResidual(), rate,
                          cert.gamma_star, cert.residual,
                          optimal ? "optimal" : "NOT optimal")};
}

absl::StatusOr<std::vector<TradeoffPoint>> SweepFamily(
    const std::string& family, std::vector<double> grid) {
  SweepSpec spec;
  spec.family = family;
  spec.grid = std::move(grid);
  spec.source = BernoulliSource{kLambda};
  return Sweep(spec);
}

// n values from hi down to lo, evenly spaced in log scale.
std::vector<double> LogGrid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    out.push_back(std::exp(std::log(hi) + t * (std::log(lo) - std::log(hi))));
  }
  return out;
}

absl::StatusOr<Outcome> EfficiencyAndSlopes() {
  std::vector<double> taus;
  for (int tau = 2; tau <= 100; ++tau) taus.push_back(tau);
  AGELEAK_ASSIGN_OR_RETURN(auto dad, SweepFamily("dad", taus));
  double worst_eta = 0.0;
  for (const TradeoffPoint& p : dad) {
    worst_eta = std::max(worst_eta, p.eta.has_value()
                                        ? std::abs(*p.eta - 2.0)
                                        : std::numeric_limits<double>::infinity());
  }

  std::vector<double> geo_taus;
  for (int tau = 1; tau <= 200; ++tau) geo_taus.push_back(tau);
  AGELEAK_ASSIGN_OR_RETURN(auto geo, SweepFamily("lcfs-geo", geo_taus));
  AGELEAK_ASSIGN_OR_RETURN(double geo_slope,
                           AsymptoticSlope(geo, kTailFraction));

  // Unthinned FCFS is stable for beta > 1/3 at lambda = 1/2; the age blows
  // up as beta approaches 1/3 while the leakage time stays bounded.
  std::vector<double> betas;
  for (double gap : LogGrid(1e-4, 2.0 / 3.0, 60)) betas.push_back(1.0 / 3.0 + gap);
  AGELEAK_ASSIGN_OR_RETURN(auto fcfs, SweepFamily("fcfs-greedy", betas));
  AGELEAK_ASSIGN_OR_RETURN(double fcfs_slope,
                           AsymptoticSlope(fcfs, kTailFraction));

  const bool ok = worst_eta <= kEfficiencyTolerance &&
                  std::abs(geo_slope - std::numbers::ln2) <= kSlopeTolerance &&
                  std::abs(fcfs_slope) <= kFlatSlopeBound;
  return Outcome{ok, absl::StrFormat("max |eta_DAD - 2| = %.3g; LCFS-geo "
                                     "slope %.5f (ln 2 = %.5f); FCFS-greedy "
                                     "slope %.3g",
                                     worst_eta, geo_slope, std::numbers::ln2,
                                     fcfs_slope)};
}

absl::StatusOr<Outcome> Dominance() {
  const DeltaRange range{3.1, 30.0};
  AGELEAK_ASSIGN_OR_RETURN(auto ddad,
                           SweepFamily("ddad", LogGrid(0.015, 1.0, 400)));
  AGELEAK_ASSIGN_OR_RETURN(auto lcfs,
                           SweepFamily("lcfs-greedy", LogGrid(0.02, 1.0, 400)));
  AGELEAK_ASSIGN_OR_RETURN(
      auto thinned, SweepFamily("fcfs-greedy-thinned", LogGrid(0.01, 1.0, 200)));
  auto max_delta = [](const std::vector<TradeoffPoint>& s) {
    double m = 0.0;
    for (const auto& p : s) m = std::max(m, p.delta);
    return m;
  };
  // The check only means something if every series spans the range.
  const bool spans = max_delta(ddad) >= range.hi && max_delta(lcfs) >= range.hi &&
                     max_delta(thinned) >= range.hi;
  AGELEAK_ASSIGN_OR_RETURN(bool a, DominanceCheck(ddad, lcfs, range));
  AGELEAK_ASSIGN_OR_RETURN(bool b, DominanceCheck(lcfs, thinned, range));
  return Outcome{spans && a && b,
                 absl::StrFormat("D-DAD over LCFS-greedy: %s; LCFS-greedy "
                                 "over thinned FCFS-greedy: %s; series span "
                                 "delta=%g: %s",
                                 YesNo(a), YesNo(b), range.hi, YesNo(spans))};
}

struct Criterion {
  int id;
  const char* name;
  absl::StatusOr<Outcome> (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "coupled-oracle", CoupledOracle},
    {2, "decoupled-oracle", DecoupledOracle},
    {3, "fibonacci-leakage", FibonacciLeakage},
    {4, "rate-identities", RateIdentities},
    {5, "age-vs-simulation", AgeVsSimulation},
    {6, "markov-source", MarkovChecks},
    {7, "greedy-exchange", ExchangeProperty},
    {8, "dithering-optimum", DitheringOptimum},
    {9, "efficiency-and-slopes", EfficiencyAndSlopes},
    {10, "dominance", Dominance},
};

}  // namespace

std::vector<CriterionResult> RunAcceptanceSuite(
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (const Criterion& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    absl::StatusOr<Outcome> outcome = c.run();
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.seconds = Seconds(start);
    if (outcome.ok()) {
      r.passed = outcome->passed;
      r.detail = std::move(outcome->detail);
    } else {
      r.detail = "error: " + std::string(outcome.status().message());
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string FormatCriterion(const CriterionResult& result) {
  return absl::StrFormat("%s [%d] %s (%.2f s): %s",
                         result.passed ? "PASS" : "FAIL", result.id,
                         result.name, result.seconds, result.detail);
}

}  // namespace ageleak
