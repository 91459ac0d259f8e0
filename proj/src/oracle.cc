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

#include "ageleak/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "absl/strings/str_format.h"
#include "ageleak/status.h"

namespace ageleak {
namespace {

// Distribution over (y prefix, server state), key = y << 32 | state.
using Dist = std::vector<std::pair<std::uint64_t, double>>;

constexpr std::uint64_t Key(Word y, std::uint32_t state) {
  return (static_cast<std::uint64_t>(y) << 32) | state;
}
constexpr Word KeyWord(std::uint64_t key) {
  return static_cast<Word>(key >> 32);
}
constexpr std::uint32_t KeyState(std::uint64_t key) {
  return static_cast<std::uint32_t>(key);
}

// Server state packing. Every field stays below 2^8 because n <= 14.
//   LCFS: remaining service slots (0 = idle).
//   FCFS: queue length << 8 | remaining service; kBlocked once the head of
//         line cannot finish inside the horizon.
//   RAD:  next attempt slot << 1 | buffer bit; attempts after n map to n+1.
constexpr std::uint32_t kBlocked = 0xFFFFFFFFu;

class Expander {
 public:
  Expander(const Policy& policy, int n) : policy_(policy), n_(n) {}

  Dist Initial() const {
    Dist out;
    if (const auto* rad = std::get_if<RadPolicy>(&policy_)) {
      for (const PmfEntry& e : rad->dump.entries()) {
        out.push_back({Key(0, RadState(Attempt(0, e.duration), false)),
                       e.probability});
      }
      Normalize(out);
    } else {
      out.push_back({Key(0, 0), 1.0});
    }
    return out;
  }

  // Advances every entry of `in` through slot t (1-based) with input x_t.
  Dist Step(const Dist& in, bool arrival, int t) const {
    Dist out;
    out.reserve(in.size() * 2);
    for (const auto& [key, p] : in) {
      const Word y = KeyWord(key);
      auto emit = [&](std::uint32_t state, double w, bool depart) {
        const Word y2 = depart ? (y | (Word{1} << (t - 1))) : y;
        out.push_back({Key(y2, state), p * w});
      };
      std::visit(
          [&](const auto& pol) { StepOne(pol, KeyState(key), arrival, t, emit); },
          policy_);
    }
    Normalize(out);
    return out;
  }

 private:
  using Emit = std::function<void(std::uint32_t, double, bool)>;

  std::int64_t Attempt(int t, Slots d) const {
    return std::min<std::int64_t>(t + d, n_ + 1);
  }
  static std::uint32_t RadState(std::int64_t attempt, bool buffered) {
    return static_cast<std::uint32_t>(attempt << 1) | (buffered ? 1u : 0u);
  }

  // Remaining slots r counted from the current slot; the update leaves in
  // slot t + r - 1.
  template <typename F>
  void FinishLcfs(std::int64_t r, double w, int t, const F& emit) const {
    if (r == 0) {
      emit(0, w, false);
    } else if (r == 1) {
      emit(0, w, true);
    } else {
      // A departure after slot n is indistinguishable from idling.
      const std::int64_t left = r - 1;
      emit(t + left > n_ ? 0 : static_cast<std::uint32_t>(left), w, false);
    }
  }

  template <typename F>
  void StepOne(const LcfsPolicy& pol, std::uint32_t state, bool arrival,
               int t, const F& emit) const {
    if (arrival) {
      for (const PmfEntry& e : pol.service.entries()) {
        FinishLcfs(e.duration, e.probability, t, emit);
      }
    } else {
      FinishLcfs(state, 1.0, t, emit);
    }
  }

  template <typename F>
  void ServeFcfs(std::uint32_t queue, std::uint32_t rem, double w, int t,
                 const F& emit) const {
    auto finish = [&](std::uint32_t q, std::int64_t r, double wr) {
      if (r == 0) {
        emit(q << 8, wr, false);
      } else if (r == 1) {
        emit(q << 8, wr, true);
      } else if (t + r - 1 > n_) {
        emit(kBlocked, wr, false);
      } else {
        emit((q << 8) | static_cast<std::uint32_t>(r - 1), wr, false);
      }
    };
    if (rem == 0 && queue > 0) {
      const auto& service = std::get<FcfsPolicy>(policy_).service;
      for (const PmfEntry& e : service.entries()) {
        finish(queue - 1, e.duration, w * e.probability);
      }
    } else {
      finish(queue, rem, w);
    }
  }

  template <typename F>
  void StepOne(const FcfsPolicy& pol, std::uint32_t state, bool arrival,
               int t, const F& emit) const {
    if (state == kBlocked) {
      emit(kBlocked, 1.0, false);
      return;
    }
    const std::uint32_t queue = state >> 8;
    const std::uint32_t rem = state & 0xFFu;
    if (arrival) {
      ServeFcfs(queue + 1, rem, pol.admit_prob, t, emit);
      if (pol.admit_prob < 1.0) {
        ServeFcfs(queue, rem, 1.0 - pol.admit_prob, t, emit);
      }
    } else {
      ServeFcfs(queue, rem, 1.0, t, emit);
    }
  }

  template <typename F>
  void StepOne(const RadPolicy& pol, std::uint32_t state, bool arrival, int t,
               const F& emit) const {
    const std::int64_t attempt = state >> 1;
    const bool buffered = (state & 1u) != 0 || arrival;
    if (attempt != t) {
      emit(RadState(attempt, buffered), 1.0, false);
      return;
    }
    for (const PmfEntry& e : pol.dump.entries()) {
      emit(RadState(Attempt(t, e.duration), false), e.probability, buffered);
    }
  }

  // Sorts by key and merges duplicates.
  static void Normalize(Dist& d) {
    std::sort(d.begin(), d.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < d.size(); ++r) {
      if (w > 0 && d[w - 1].first == d[r].first) {
        d[w - 1].second += d[r].second;
      } else {
        d[w++] = d[r];
      }
    }
    d.resize(w);
  }

  const Policy& policy_;
  int n_;
};

absl::Status CheckHorizon(int n, int limit) {
  if (n < 0 || n > limit) {
    return MakeError(ErrorKind::kHorizonTooLarge,
                     absl::StrFormat("horizon %d outside [0,%d]", n, limit));
  }
  return absl::OkStatus();
}

// Sums the leaf distribution over server states, visiting y in order.
template <typename F>
void ForEachOutput(const Dist& leaf, const F& f) {
  std::size_t i = 0;
  while (i < leaf.size()) {
    const Word y = KeyWord(leaf[i].first);
    double p = 0.0;
    for (; i < leaf.size() && KeyWord(leaf[i].first) == y; ++i) {
      p += leaf[i].second;
    }
    f(y, p);
  }
}

}  // namespace

absl::StatusOr<Word> WordFromString(std::string_view bits) {
  if (bits.size() > 32) {
    return MakeError(ErrorKind::kHorizonTooLarge, "word longer than 32 slots");
  }
  Word w = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      w |= Word{1} << i;
    } else if (bits[i] != '0') {
      return MakeError(ErrorKind::kParseError,
                       absl::StrFormat("bad slot symbol '%c'", bits[i]));
    }
  }
  return w;
}

std::string WordToString(Word word, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((word >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

absl::StatusOr<std::vector<double>> EnumerateChannel(const Policy& policy,
                                                     Word x, int n) {
  AGELEAK_RETURN_IF_ERROR(CheckHorizon(n, kMaxOracleHorizon));
  const Expander ex(policy, n);
  Dist d = ex.Initial();
  for (int t = 1; t <= n; ++t) d = ex.Step(d, ((x >> (t - 1)) & 1u) != 0, t);
  std::vector<double> out(std::size_t{1} << n, 0.0);
  ForEachOutput(d, [&](Word y, double p) { out[y] += p; });
  return out;
}

absl::StatusOr<ChannelTable> BuildChannelTable(const Policy& policy, int n) {
  AGELEAK_RETURN_IF_ERROR(CheckHorizon(n, kMaxOracleHorizon));
  const Expander ex(policy, n);
  ChannelTable table;
  table.n = n;
  table.ml_prob.assign(std::size_t{1} << n, 0.0);

  // Depth-first over input prefixes so siblings share their common past.
  std::function<void(int, const Dist&)> walk = [&](int t, const Dist& d) {
    if (t > n) {
      double total = 0.0;
      ForEachOutput(d, [&](Word y, double p) {
        total += p;
        table.ml_prob[y] = std::max(table.ml_prob[y], p);
      });
      table.max_normalization_error =
          std::max(table.max_normalization_error, std::abs(total - 1.0));
      return;
    }
    walk(t + 1, ex.Step(d, false, t));
    walk(t + 1, ex.Step(d, true, t));
  };
  walk(1, ex.Initial());
  return table;
}

absl::StatusOr<LeakageResult> BruteForceMaxl(const Policy& policy, int n) {
  AGELEAK_ASSIGN_OR_RETURN(ChannelTable table, BuildChannelTable(policy, n));
  double sum = 0.0;
  for (double p : table.ml_prob) sum += p;
  return LeakageResult{std::log2(sum), n};
}

Word DesignatedInput(const Policy& policy, Word y) {
  if (!IsCoupled(policy)) return y;
  const Slots lead = PolicyPmf(policy).min_duration() - 1;
  return lead >= 32 ? 0 : y >> lead;
}

absl::StatusOr<bool> VerifyMlInput(const Policy& policy, int n) {
  AGELEAK_RETURN_IF_ERROR(CheckHorizon(n, kMaxMlCheckHorizon));
  AGELEAK_ASSIGN_OR_RETURN(ChannelTable table, BuildChannelTable(policy, n));
  for (Word y = 0; y < (Word{1} << n); ++y) {
    if (table.ml_prob[y] <= 0.0) continue;
    AGELEAK_ASSIGN_OR_RETURN(std::vector<double> row,
                             EnumerateChannel(policy, DesignatedInput(policy, y),
                                              n));
    if (row[y] < table.ml_prob[y] - 1e-12) return false;
  }
  return true;
}

}  // namespace ageleak
