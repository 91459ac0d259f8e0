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

// ageleak: age / maximal-leakage trade-offs for timely-update servers.
//
// Exit codes: 0 success, 1 failed acceptance criteria, 2 invalid input,
// 3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_format.h"
#include "ageleak/acceptance.h"
#include "ageleak/age.h"
#include "ageleak/json_io.h"
#include "ageleak/leakage.h"
#include "ageleak/optimizer.h"
#include "ageleak/oracle.h"
#include "ageleak/policy.h"
#include "ageleak/simulator.h"
#include "ageleak/status.h"
#include "ageleak/tradeoff.h"
#include "json.hpp"

namespace ageleak {
namespace {

using Json = nlohmann::ordered_json;

struct Flags {
  std::string policy;
  std::optional<double> beta, tau, rate, mu;
  double lambda = 0.5;
  std::optional<double> p01, p10;
  double alpha = 1.0;
  int n = 10;
  std::int64_t slots = 1'000'000;
  std::int64_t warmup = 10'000;
  std::uint64_t seed = 1;
  std::string out;
  std::string grid;
  std::string x;
  std::string scenario;
  bool fake_updates = false;
  int dmax = 8;
};

absl::Status Invalid(const std::string& message) {
  return MakeError(ErrorKind::kInvalidArgument, message);
}

// The flag that carries each family's parameter.
absl::StatusOr<double> FamilyParam(const Flags& f) {
  const std::string& p = f.policy;
  auto need = [&](const std::optional<double>& v,
                  const char* flag) -> absl::StatusOr<double> {
    if (!v.has_value()) {
      return Invalid(absl::StrFormat("--policy %s needs %s", p, flag));
    }
    return *v;
  };
  if (p == "lcfs-greedy" || p == "fcfs-greedy" || p == "fcfs-greedy-thinned") {
    return need(f.beta, "--beta");
  }
  if (p == "lcfs-geo" || p == "dad" || p == "rad-geo" || p == "rad-uniform") {
    return need(f.tau, "--tau");
  }
  if (p == "fcfs-geo" || p == "mbt") return need(f.mu, "--mu");
  if (p == "ddad") return need(f.rate, "--rate");
  if (p.empty()) return Invalid("--policy is required");
  return Invalid(absl::StrFormat("unknown policy \"%s\"", p));
}

absl::StatusOr<SourceModel> SourceFromFlags(const Flags& f) {
  if (f.p01.has_value() != f.p10.has_value()) {
    return Invalid("--p01 and --p10 go together");
  }
  if (f.p01.has_value()) {
    MarkovSource m{*f.p01, *f.p10};
    AGELEAK_RETURN_IF_ERROR(ValidateMarkovSource(m));
    return SourceModel(m);
  }
  return SourceModel(BernoulliSource{f.lambda});
}

absl::Status Emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return absl::OkStatus();
  }
  std::ofstream out(path);
  if (!out) return Invalid("cannot write " + path);
  out << text;
  return absl::OkStatus();
}

Json PointJson(const TradeoffPoint& p) {
  Json j;
  j["policy"] = p.policy_tag;
  j["param"] = p.param;
  j["source"] = p.source;
  j["delta"] = p.delta;
  j["rate_bits"] = p.rate_bits;
  j["leak_time"] = p.leak_time;
  j["eta"] = p.eta.has_value() ? Json(*p.eta) : Json(nullptr);
  return j;
}

absl::Status RunAge(const Flags& f) {
  AGELEAK_ASSIGN_OR_RETURN(double param, FamilyParam(f));
  AGELEAK_ASSIGN_OR_RETURN(SourceModel source, SourceFromFlags(f));
  AGELEAK_ASSIGN_OR_RETURN(TradeoffPoint p,
                           EvaluatePoint(f.policy, param, source, f.alpha));
  return Emit(PointJson(p).dump(2) + "\n", f.out);
}

absl::Status RunLeakage(const Flags& f) {
  AGELEAK_ASSIGN_OR_RETURN(double param, FamilyParam(f));
  AGELEAK_ASSIGN_OR_RETURN(Policy policy,
                           FamilyPolicy(f.policy, param, f.alpha));
  const FinitePmf& pmf = PolicyPmf(policy);
  Json j;
  j["policy"] = f.policy;
  j["n"] = f.n;
  if (IsCoupled(policy)) {
    const SmpCheck smp = IsSmp(pmf);
    if (!smp.smp) return Invalid("closed form needs an SMP service pmf");
    const double head = pmf.entries().front().probability;
    AGELEAK_ASSIGN_OR_RETURN(LeakageResult r,
                             SmpLeakageBits(f.n, smp.s_min, head));
    j["bits"] = r.bits;
    if (std::holds_alternative<FcfsPolicy>(policy) && f.alpha < 1.0) {
      j["note"] = "thinned FCFS: value is an upper bound";
    }
  } else {
    j["bits"] = RadLeakageBits(f.n, pmf).bits;
  }
  return Emit(j.dump(2) + "\n", f.out);
}

absl::Status RunRate(const Flags& f) {
  AGELEAK_ASSIGN_OR_RETURN(double param, FamilyParam(f));
  AGELEAK_ASSIGN_OR_RETURN(Policy policy,
                           FamilyPolicy(f.policy, param, f.alpha));
  const FinitePmf& pmf = PolicyPmf(policy);
  Json j;
  j["policy"] = f.policy;
  if (IsCoupled(policy)) {
    const SmpCheck smp = IsSmp(pmf);
    if (!smp.smp) return Invalid("rate bounds need an SMP service pmf");
    AGELEAK_ASSIGN_OR_RETURN(
        RateBounds b,
        SmpRateBounds(smp.s_min, pmf.entries().front().probability));
    j["rate_lower"] = b.lower;
    j["rate_upper"] = b.upper;
    AGELEAK_ASSIGN_OR_RETURN(double t, LeakageTime(b.upper));
    j["leak_time"] = t;
  } else {
    AGELEAK_ASSIGN_OR_RETURN(RateRoot r, RadRateRoot(pmf));
    j["rate_bits"] = r.rate_bits;
    j["z0"] = r.z0;
    j["residual"] = r.residual;
    AGELEAK_ASSIGN_OR_RETURN(double t, LeakageTime(r.rate_bits));
    j["leak_time"] = t;
  }
  return Emit(j.dump(2) + "\n", f.out);
}

absl::Status RunOptimize(const Flags& f) {
  Json j;
  j["policy"] = f.policy;
  if (f.policy == "lcfs-greedy") {
    AGELEAK_ASSIGN_OR_RETURN(double beta, FamilyParam(f));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(beta));
    AGELEAK_ASSIGN_OR_RETURN(AgeResult age, LcfsAge(f.lambda, pmf));
    j["service"] = PmfToJsonValue(pmf);
    j["delta"] = age.delta;
  } else if (f.policy == "ddad") {
    AGELEAK_ASSIGN_OR_RETURN(double rate, FamilyParam(f));
    AGELEAK_ASSIGN_OR_RETURN(DitherPolicy d, DdadPolicy(rate));
    const DinkelbachCertificate cert = DinkelbachCertify(d);
    AGELEAK_ASSIGN_OR_RETURN(TwoPointSearchResult search,
                             SearchTwoPointOptimum(rate, f.dmax));
    j["dump"] = PmfToJsonValue(d.ToPmf());
    j["mean_period"] = d.mean_period();
    j["z0"] = d.z0;
    j["constraint_residual"] = d.ConstraintResidual();
    j["gamma_star"] = cert.gamma_star;
    j["dinkelbach_residual"] = cert.residual;
    j["two_point_optimal"] = search.optimal;
    j["vertices_checked"] = search.vertices_checked;
    AGELEAK_ASSIGN_OR_RETURN(AgeResult age, DdadAge(f.lambda, d.mean_period()));
    j["delta"] = age.delta;
  } else if (f.policy == "fcfs-greedy" || f.policy == "fcfs-greedy-thinned") {
    AGELEAK_ASSIGN_OR_RETURN(double beta, FamilyParam(f));
    AGELEAK_ASSIGN_OR_RETURN(FinitePmf pmf, GreedySmpPmf(beta));
    AGELEAK_ASSIGN_OR_RETURN(AlphaChoice c, OptimalAlphaForFcfs(f.lambda, pmf));
    j["alpha"] = c.alpha;
    j["delta"] = c.age.delta;
  } else if (f.policy == "fcfs-geo" || f.policy == "mbt") {
    AGELEAK_ASSIGN_OR_RETURN(double mu, FamilyParam(f));
    AGELEAK_ASSIGN_OR_RETURN(AlphaChoice c, OptimalAlphaForMbt(f.lambda, mu));
    j["alpha"] = c.alpha;
    j["delta"] = c.age.delta;
  } else {
    return Invalid(
        "optimize supports lcfs-greedy, ddad, fcfs-greedy[-thinned], "
        "fcfs-geo and mbt");
  }
  return Emit(j.dump(2) + "\n", f.out);
}

absl::Status RunSweep(const Flags& f) {
  if (f.grid.empty()) return Invalid("--grid is required");
  SweepSpec spec;
  spec.family = f.policy;
  AGELEAK_ASSIGN_OR_RETURN(spec.grid, ParseGrid(f.grid));
  AGELEAK_ASSIGN_OR_RETURN(spec.source, SourceFromFlags(f));
  spec.alpha = f.alpha;
  spec.sim_slots = f.slots;
  spec.sim_warmup = f.warmup;
  spec.seed = f.seed;
  AGELEAK_ASSIGN_OR_RETURN(std::vector<TradeoffPoint> points, Sweep(spec));
  return Emit(ToCsv(points), f.out);
}

absl::Status RunSimulate(const Flags& f, const CLI::App& cmd) {
  std::optional<SimConfig> cfg;
  if (!f.scenario.empty()) {
    AGELEAK_ASSIGN_OR_RETURN(SimConfig c, SimConfigFromFile(f.scenario));
    cfg.emplace(std::move(c));
    // Explicit flags override the scenario file.
    if (cmd.count("--slots")) cfg->horizon = f.slots;
    if (cmd.count("--warmup")) cfg->warmup = f.warmup;
    if (cmd.count("--seed")) cfg->seed = f.seed;
    if (cmd.count("--fake-updates")) cfg->rad_fake_updates = f.fake_updates;
  } else {
    AGELEAK_ASSIGN_OR_RETURN(double param, FamilyParam(f));
    AGELEAK_ASSIGN_OR_RETURN(SourceModel source, SourceFromFlags(f));
    AGELEAK_ASSIGN_OR_RETURN(Policy policy,
                             ResolvePolicy(f.policy, param, source, f.alpha));
    cfg.emplace(SimConfig{std::move(policy), source});
    cfg->horizon = f.slots;
    cfg->warmup = f.warmup;
    cfg->seed = f.seed;
    cfg->rad_fake_updates = f.fake_updates;
  }
  AGELEAK_ASSIGN_OR_RETURN(SimStats s, Simulate(*cfg));
  Json j;
  j["policy"] = PolicyToJsonValue(cfg->policy);
  j["source"] = SourceLabel(cfg->source);
  j["horizon"] = cfg->horizon;
  j["warmup"] = cfg->warmup;
  j["seed"] = cfg->seed;
  j["mean_age"] = s.mean_age;
  j["ci_half_width"] = s.ci_half_width;
  j["delivered"] = s.delivered;
  j["output_rate"] = s.output_rate;
  j["source_rate"] = s.source_rate;
  j["max_queue"] = s.max_queue;
  return Emit(j.dump(2) + "\n", f.out);
}

absl::Status RunOracle(const Flags& f) {
  AGELEAK_ASSIGN_OR_RETURN(double param, FamilyParam(f));
  AGELEAK_ASSIGN_OR_RETURN(Policy policy,
                           FamilyPolicy(f.policy, param, f.alpha));
  Json j;
  j["policy"] = f.policy;
  j["n"] = f.n;
  if (!f.x.empty()) {
    AGELEAK_ASSIGN_OR_RETURN(Word x, WordFromString(f.x));
    if (static_cast<int>(f.x.size()) != f.n) {
      return Invalid("--x must have exactly n bits");
    }
    AGELEAK_ASSIGN_OR_RETURN(std::vector<double> row,
                             EnumerateChannel(policy, x, f.n));
    Json dist = Json::object();
    for (std::size_t y = 0; y < row.size(); ++y) {
      if (row[y] > 0.0) {
        dist[WordToString(static_cast<Word>(y), f.n)] = row[y];
      }
    }
    j["x"] = f.x;
    j["p_y_given_x"] = std::move(dist);
  } else {
    AGELEAK_ASSIGN_OR_RETURN(ChannelTable t, BuildChannelTable(policy, f.n));
    double sum = 0.0;
    for (double p : t.ml_prob) sum += p;
    j["maxl_bits"] = std::log2(sum);
    j["max_normalization_error"] = t.max_normalization_error;
    if (f.n <= kMaxMlCheckHorizon) {
      AGELEAK_ASSIGN_OR_RETURN(bool ml, VerifyMlInput(policy, f.n));
      j["designated_input_is_ml"] = ml;
    }
  }
  return Emit(j.dump(2) + "\n", f.out);
}

int RunCheck() {
  int failed = 0;
  RunAcceptanceSuite([&](const CriterionResult& r) {
    std::printf("%s\n", FormatCriterion(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

int ExitCode(const absl::Status& status) {
  if (status.ok()) return 0;
  std::fprintf(stderr, "error: %s\n", std::string(status.message()).c_str());
  return status.code() == absl::StatusCode::kResourceExhausted ? 3 : 2;
}

}  // namespace
}  // namespace ageleak

int main(int argc, char** argv) {
  using ageleak::Flags;
  Flags f;
  CLI::App app{"Age of information vs. maximal leakage for update servers"};
  app.require_subcommand(1);

  auto policy_flags = [&f](CLI::App* cmd) {
    cmd->add_option("--policy", f.policy, "Policy family");
    cmd->add_option("--beta", f.beta, "g(1) of the greedy SMP pmf");
    cmd->add_option("--tau", f.tau, "Mean service or dump period");
    cmd->add_option("--rate", f.rate, "Target leakage rate, bits/slot");
    cmd->add_option("--mu", f.mu, "Geometric service rate");
    cmd->add_option("--alpha", f.alpha, "FCFS admission probability");
  };
  auto source_flags = [&f](CLI::App* cmd) {
    cmd->add_option("--lambda", f.lambda, "Bernoulli arrival rate");
    cmd->add_option("--p01", f.p01, "Markov inactive->active probability");
    cmd->add_option("--p10", f.p10, "Markov active->inactive probability");
  };
  auto out_flag = [&f](CLI::App* cmd) {
    cmd->add_option("--out", f.out, "Output file (default stdout)");
  };

  CLI::App* age = app.add_subcommand("age", "Closed-form average age");
  policy_flags(age);
  source_flags(age);
  out_flag(age);

  CLI::App* leakage = app.add_subcommand("leakage", "Finite-n MaxL in bits");
  policy_flags(leakage);
  leakage->add_option("--n", f.n, "Horizon in slots");
  out_flag(leakage);

  CLI::App* rate = app.add_subcommand("rate", "Asymptotic leakage rate");
  policy_flags(rate);
  out_flag(rate);

  CLI::App* optimize =
      app.add_subcommand("optimize", "Optimal policy for a constraint");
  policy_flags(optimize);
  source_flags(optimize);
  optimize->add_option("--dmax", f.dmax, "Support bound for the ddad search");
  out_flag(optimize);

  CLI::App* sweep = app.add_subcommand("sweep", "Trade-off table as CSV");
  policy_flags(sweep);
  source_flags(sweep);
  sweep->add_option("--grid", f.grid, "start:stop:step or v1,v2,...");
  sweep->add_option("--slots", f.slots,
                    "Simulated slots per point (0 disables)")
      ->default_val(0);
  sweep->add_option("--warmup", f.warmup, "Warmup slots");
  sweep->add_option("--seed", f.seed, "Base seed");
  out_flag(sweep);

  CLI::App* simulate = app.add_subcommand("simulate", "Slot simulation");
  policy_flags(simulate);
  source_flags(simulate);
  simulate->add_option("--scenario", f.scenario, "Scenario JSON file");
  simulate->add_option("--slots", f.slots, "Horizon in slots");
  simulate->add_option("--warmup", f.warmup, "Warmup slots");
  simulate->add_option("--seed", f.seed, "Seed");
  simulate->add_flag("--fake-updates", f.fake_updates,
                     "RAD resends the last dump when the buffer is empty");
  out_flag(simulate);

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force MaxL");
  policy_flags(oracle);
  oracle->add_option("--n", f.n, "Horizon in slots");
  oracle->add_option("--x", f.x, "Input word, slot 1 first, e.g. 0110");
  out_flag(oracle);

  app.add_subcommand("check", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  absl::Status status;
  if (age->parsed()) status = ageleak::RunAge(f);
  if (leakage->parsed()) status = ageleak::RunLeakage(f);
  if (rate->parsed()) status = ageleak::RunRate(f);
  if (optimize->parsed()) status = ageleak::RunOptimize(f);
  if (sweep->parsed()) status = ageleak::RunSweep(f);
  if (simulate->parsed()) status = ageleak::RunSimulate(f, *simulate);
  if (oracle->parsed()) status = ageleak::RunOracle(f);
  if (app.got_subcommand("check")) return ageleak::RunCheck();
  return ageleak::ExitCode(status);
}
