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

#include "ageleak/simulator.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <fstream>
#include <random>
#include <sstream>

#include "absl/strings/str_format.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

using Rng = std::mt19937_64;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class PmfSampler {
 public:
  explicit PmfSampler(const FinitePmf& pmf) {
    std::vector<double> weights;
    for (const PmfEntry& e : pmf.entries()) {
      durations_.push_back(e.duration);
      weights.push_back(e.probability);
    }
    dist_ = std::discrete_distribution<std::size_t>(weights.begin(),
                                                    weights.end());
  }
  Slots operator()(Rng& rng) { return durations_[dist_(rng)]; }

 private:
  std::vector<Slots> durations_;
  std::discrete_distribution<std::size_t> dist_;
};

class SourceProcess {
 public:
  SourceProcess(const SourceModel& model, Rng& rng) : model_(model) {
    if (const auto* m = std::get_if<MarkovSource>(&model_)) {
      active_ = Coin(rng, MarkovEffectiveRate(*m));
    }
  }

  // Whether an update arrives in the current slot.
  bool Next(Rng& rng) {
    if (const auto* b = std::get_if<BernoulliSource>(&model_)) {
      return Coin(rng, b->lambda);
    }
    const auto& m = std::get<MarkovSource>(model_);
    active_ = active_ ? !Coin(rng, m.p10) : Coin(rng, m.p01);
    return active_;
  }

 private:
  static bool Coin(Rng& rng, double p) {
    if (p >= 1.0) return true;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  }

  SourceModel model_;
  bool active_ = false;
};

absl::Status ValidateSource(const SourceModel& source) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) {
    if (!(b->lambda > 0.0 && b->lambda <= 1.0)) {
      return MakeError(ErrorKind::kInvalidConfig,
                       absl::StrFormat("lambda=%g not in (0,1]", b->lambda));
    }
    return absl::OkStatus();
  }
  const absl::Status s = ValidateMarkovSource(std::get<MarkovSource>(source));
  if (!s.ok()) return MakeError(ErrorKind::kInvalidConfig, std::string(s.message()));
  return absl::OkStatus();
}

absl::Status ValidateRun(std::int64_t horizon, std::int64_t warmup) {
  if (warmup < 0 || horizon <= warmup) {
    return MakeError(ErrorKind::kInvalidConfig,
                     absl::StrFormat("need horizon > warmup >= 0, got %d, %d",
                                     horizon, warmup));
  }
  if (horizon - warmup < kBatchCount) {
    return MakeError(ErrorKind::kInvalidConfig,
                     absl::StrFormat("fewer than %d measured slots",
                                     kBatchCount));
  }
  return absl::OkStatus();
}

// Running age statistics over the measured window, split into batches.
class BatchMeans {
 public:
  BatchMeans(std::int64_t first_slot, std::int64_t slots)
      : first_(first_slot), batch_size_(slots / kBatchCount) {}

  void Add(std::int64_t t, double age) {
    const std::int64_t idx =
        std::min<std::int64_t>((t - first_) / batch_size_, kBatchCount - 1);
    sums_[static_cast<std::size_t>(idx)] += age;
    counts_[static_cast<std::size_t>(idx)] += 1;
  }

  void Fill(SimStats& out) const {
    double total = 0.0;
    std::int64_t n = 0;
    double means[kBatchCount];
    for (int k = 0; k < kBatchCount; ++k) {
      total += sums_[k];
      n += counts_[k];
      means[k] = sums_[k] / static_cast<double>(counts_[k]);
    }
    out.mean_age = total / static_cast<double>(n);
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= kBatchCount;
    double ss = 0.0;
    for (double m : means) ss += (m - grand) * (m - grand);
    const double sd = std::sqrt(ss / (kBatchCount - 1));
    out.ci_half_width = kBatchTQuantile * sd / std::sqrt(kBatchCount);
  }

 private:
  std::int64_t first_;
  std::int64_t batch_size_;
  double sums_[kBatchCount] = {};
  std::int64_t counts_[kBatchCount] = {};
};

// Least-squares slope of queue length against time.
class SlopeFit {
 public:
  void Add(double x, double y) {
    n_ += 1.0;
    sx_ += x;
    sy_ += y;
    sxx_ += x * x;
    sxy_ += x * y;
  }
  double Slope() const {
    const double den = n_ * sxx_ - sx_ * sx_;
    return den > 0.0 ? (n_ * sxy_ - sx_ * sy_) / den : 0.0;
  }

 private:
  double n_ = 0.0, sx_ = 0.0, sy_ = 0.0, sxx_ = 0.0, sxy_ = 0.0;
};

// Server state machines. Each returns the timestamp transmitted in slot t,
// or kNothing.
constexpr std::int64_t kNothing = -1;

class Server {
 public:
  virtual ~Server() = default;
  virtual std::int64_t Step(std::int64_t t, bool arrival, Rng& rng) = 0;
  virtual std::int64_t QueueLength() const { return 0; }
};

class LcfsServer : public Server {
 public:
  explicit LcfsServer(const LcfsPolicy& p) : service_(p.service) {}

  std::int64_t Step(std::int64_t t, bool arrival, Rng& rng) override {
    if (arrival) {
      stamp_ = t - 1;
      remaining_ = service_(rng);
    }
    if (remaining_ == 0) return kNothing;
    if (--remaining_ == 0) return stamp_;
    return kNothing;
  }

 private:
  PmfSampler service_;
  Slots remaining_ = 0;
  std::int64_t stamp_ = 0;
};

class FcfsServer : public Server {
 public:
  explicit FcfsServer(const FcfsPolicy& p)
      : service_(p.service), admit_(p.admit_prob) {}

  std::int64_t Step(std::int64_t t, bool arrival, Rng& rng) override {
    if (arrival && (admit_ >= 1.0 ||
                    std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
                        admit_)) {
      queue_.push_back(t - 1);
    }
    if (remaining_ == 0 && !queue_.empty()) {
      stamp_ = queue_.front();
      queue_.pop_front();
      remaining_ = service_(rng);
    }
    if (remaining_ == 0) return kNothing;
    if (--remaining_ == 0) return stamp_;
    return kNothing;
  }

  std::int64_t QueueLength() const override {
    return static_cast<std::int64_t>(queue_.size()) + (remaining_ > 0 ? 1 : 0);
  }

 private:
  PmfSampler service_;
  double admit_;
  std::deque<std::int64_t> queue_;
  Slots remaining_ = 0;
  std::int64_t stamp_ = 0;
};

class RadServer : public Server {
 public:
  RadServer(const RadPolicy& p, bool fake_updates, Rng& rng)
      : dump_(p.dump), fake_(fake_updates) {
    next_attempt_ = dump_(rng);
  }

  std::int64_t Step(std::int64_t t, bool arrival, Rng& rng) override {
    if (arrival) buffer_ = t - 1;
    if (t != next_attempt_) return kNothing;
    next_attempt_ = t + dump_(rng);
    if (buffer_ != kNothing) {
      last_dumped_ = buffer_;
      buffer_ = kNothing;
      return last_dumped_;
    }
    return fake_ ? last_dumped_ : kNothing;
  }

 private:
  PmfSampler dump_;
  bool fake_;
  std::int64_t next_attempt_ = 0;
  std::int64_t buffer_ = kNothing;
  std::int64_t last_dumped_ = kNothing;
};

std::unique_ptr<Server> MakeServer(const SimConfig& cfg, Rng& rng) {
  if (const auto* p = std::get_if<LcfsPolicy>(&cfg.policy)) {
    return std::make_unique<LcfsServer>(*p);
  }
  if (const auto* p = std::get_if<FcfsPolicy>(&cfg.policy)) {
    return std::make_unique<FcfsServer>(*p);
  }
  return std::make_unique<RadServer>(std::get<RadPolicy>(cfg.policy),
                                     cfg.rad_fake_updates, rng);
}

absl::StatusOr<double> NumberOr(const nlohmann::json& v, const char* key,
                                double fallback) {
  if (!v.contains(key)) return fallback;
  if (!v[key].is_number()) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("\"%s\" must be a number", key));
  }
  return v[key].get<double>();
}

}  // namespace

double SourceRate(const SourceModel& source) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) return b->lambda;
  return MarkovEffectiveRate(std::get<MarkovSource>(source));
}

std::uint64_t StreamSeed(std::uint64_t base, std::uint64_t index) {
  return SplitMix64(SplitMix64(base) ^ SplitMix64(index + 1));
}

absl::StatusOr<SimStats> Simulate(const SimConfig& config) {
  AGELEAK_RETURN_IF_ERROR(ValidateRun(config.horizon, config.warmup));
  AGELEAK_RETURN_IF_ERROR(ValidateSource(config.source));
  if (const auto* f = std::get_if<FcfsPolicy>(&config.policy)) {
    if (!(f->admit_prob > 0.0 && f->admit_prob <= 1.0)) {
      return MakeError(ErrorKind::kInvalidConfig,
                       "admission probability must lie in (0,1]");
    }
  }

  Rng rng(SplitMix64(config.seed));
  SourceProcess source(config.source, rng);
  std::unique_ptr<Server> server = MakeServer(config, rng);

  const std::int64_t measured = config.horizon - config.warmup;
  BatchMeans batches(config.warmup + 1, measured);
  SlopeFit queue_fit;
  const std::int64_t tail_start = config.horizon - config.horizon / 10 + 1;

  SimStats stats;
  std::int64_t arrivals = 0;
  std::int64_t transmissions = 0;
  std::int64_t monitor_stamp = -1;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const bool measuring = t > config.warmup;
    if (measuring) {
      batches.Add(t, static_cast<double>(t - monitor_stamp));
    }
    const bool arrival = source.Next(rng);
    const std::int64_t sent = server->Step(t, arrival, rng);
    if (sent != kNothing) {
      const bool fresh = sent > monitor_stamp;
      monitor_stamp = std::max(monitor_stamp, sent);
      if (measuring) {
        ++transmissions;
        if (fresh) ++stats.delivered;
      }
    }
    if (measuring && arrival) ++arrivals;
    const std::int64_t q = server->QueueLength();
    stats.max_queue = std::max(stats.max_queue, q);
    if (t >= tail_start) {
      queue_fit.Add(static_cast<double>(t - tail_start),
                    static_cast<double>(q));
    }
  }
  batches.Fill(stats);
  stats.output_rate =
      static_cast<double>(transmissions) / static_cast<double>(measured);
  stats.source_rate =
      static_cast<double>(arrivals) / static_cast<double>(measured);
  stats.tail_queue_slope = queue_fit.Slope();
  return stats;
}

absl::StatusOr<SourceAgeStats> EmpiricalSourceAge(const SourceConfig& config) {
  AGELEAK_RETURN_IF_ERROR(ValidateRun(config.horizon, config.warmup));
  AGELEAK_RETURN_IF_ERROR(ValidateSource(config.source));
  Rng rng(SplitMix64(config.seed));
  SourceProcess source(config.source, rng);

  const std::int64_t measured = config.horizon - config.warmup;
  BatchMeans batches(config.warmup + 1, measured);
  std::vector<std::int64_t> counts(2, 0);
  std::int64_t newest = -1;
  std::int64_t arrivals = 0;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const bool arrival = source.Next(rng);
    if (arrival) newest = t - 1;
    if (t <= config.warmup) continue;
    if (arrival) ++arrivals;
    const std::int64_t age = t - newest;
    batches.Add(t, static_cast<double>(age));
    if (static_cast<std::size_t>(age) >= counts.size()) {
      counts.resize(static_cast<std::size_t>(age) + 1, 0);
    }
    ++counts[static_cast<std::size_t>(age)];
  }
  SourceAgeStats out;
  batches.Fill(out.stats);
  out.stats.delivered = arrivals;
  out.stats.source_rate =
      static_cast<double>(arrivals) / static_cast<double>(measured);
  out.stats.output_rate = out.stats.source_rate;
  out.age_pmf.resize(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    out.age_pmf[a] =
        static_cast<double>(counts[a]) / static_cast<double>(measured);
  }
  return out;
}

absl::StatusOr<SourceModel> SourceFromJsonValue(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("kind") ||
      !value["kind"].is_string()) {
    return MakeError(ErrorKind::kParseError,
                     "source JSON needs a string \"kind\"");
  }
  const std::string kind = value["kind"].get<std::string>();
  if (kind == "bernoulli") {
    AGELEAK_ASSIGN_OR_RETURN(double lambda, NumberOr(value, "lambda", -1.0));
    return BernoulliSource{lambda};
  }
  if (kind == "markov") {
    AGELEAK_ASSIGN_OR_RETURN(double p01, NumberOr(value, "p01", -1.0));
    AGELEAK_ASSIGN_OR_RETURN(double p10, NumberOr(value, "p10", -1.0));
    return MarkovSource{p01, p10};
  }
  return MakeError(ErrorKind::kParseError,
                   absl::StrFormat("unknown source kind \"%s\"", kind));
}

nlohmann::json SourceToJsonValue(const SourceModel& source) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) {
    return {{"kind", "bernoulli"}, {"lambda", b->lambda}};
  }
  const auto& m = std::get<MarkovSource>(source);
  return {{"kind", "markov"}, {"p01", m.p01}, {"p10", m.p10}};
}

std::string SourceLabel(const SourceModel& source) {
  if (const auto* b = std::get_if<BernoulliSource>(&source)) {
    return absl::StrFormat("bernoulli(%g)", b->lambda);
  }
  const auto& m = std::get<MarkovSource>(source);
  return absl::StrFormat("markov(%g,%g)", m.p01, m.p10);
}

absl::StatusOr<SimConfig> SimConfigFromJsonValue(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("policy") ||
      !value.contains("source")) {
    return MakeError(ErrorKind::kParseError,
                     "scenario needs \"policy\" and \"source\"");
  }
  AGELEAK_ASSIGN_OR_RETURN(Policy policy, PolicyFromJsonValue(value["policy"]));
  AGELEAK_ASSIGN_OR_RETURN(SourceModel source,
                           SourceFromJsonValue(value["source"]));
  SimConfig cfg{std::move(policy), source};
  AGELEAK_ASSIGN_OR_RETURN(double horizon,
                           NumberOr(value, "horizon", 1'000'000.0));
  AGELEAK_ASSIGN_OR_RETURN(double warmup, NumberOr(value, "warmup", 10'000.0));
  cfg.horizon = static_cast<std::int64_t>(horizon);
  cfg.warmup = static_cast<std::int64_t>(warmup);
  if (value.contains("seed")) {
    if (!value["seed"].is_number_unsigned() &&
        !value["seed"].is_number_integer()) {
      return MakeError(ErrorKind::kParseError, "\"seed\" must be an integer");
    }
    cfg.seed = value["seed"].get<std::uint64_t>();
  }
  if (value.contains("fake_updates")) {
    if (!value["fake_updates"].is_boolean()) {
      return MakeError(ErrorKind::kParseError,
                       "\"fake_updates\" must be a boolean");
    }
    cfg.rad_fake_updates = value["fake_updates"].get<bool>();
  }
  AGELEAK_RETURN_IF_ERROR(ValidateRun(cfg.horizon, cfg.warmup));
  AGELEAK_RETURN_IF_ERROR(ValidateSource(cfg.source));
  return cfg;
}

absl::StatusOr<SimConfig> SimConfigFromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return MakeError(ErrorKind::kInvalidConfig,
                     absl::StrFormat("cannot open scenario %s", path));
  }
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json value = nlohmann::json::parse(buf.str(), nullptr, false);
  if (value.is_discarded()) {
    return MakeError(ErrorKind::kParseError,
                     absl::StrFormat("scenario %s is not valid JSON", path));
  }
  return SimConfigFromJsonValue(value);
}

}  // namespace ageleak
