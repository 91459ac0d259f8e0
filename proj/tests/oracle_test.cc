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

#include <cmath>
#include <vector>

#include "ageleak/leakage.h"
#include "ageleak/optimizer.h"
#include "ageleak/status.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ageleak {
namespace {

constexpr double kFourLog2OnePointFive = 2.33985000288462473;

Word W(const char* s) { return *WordFromString(s); }

Policy Lcfs(double beta) { return LcfsPolicy{*GreedySmpPmf(beta)}; }
Policy Fcfs(double beta) { return FcfsPolicy{*GreedySmpPmf(beta), 1.0}; }
Policy Rad(const FinitePmf& pmf) { return RadPolicy{pmf}; }

TEST(WordTest, RoundTrip) {
  EXPECT_EQ(W("1010"), 0b0101u);
  EXPECT_EQ(WordToString(W("0011010"), 7), "0011010");
  EXPECT_EQ(GetErrorKind(WordFromString("10x")), ErrorKind::kParseError);
}

TEST(EnumerateChannelTest, Examples) {
  const auto pass = *EnumerateChannel(Lcfs(1.0), W("1010"), 4);
  EXPECT_EQ(pass[W("1010")], 1.0);

  const auto half = *EnumerateChannel(Lcfs(0.5), W("10"), 2);
  EXPECT_DOUBLE_EQ(half[W("10")], 0.5);
  EXPECT_DOUBLE_EQ(half[W("01")], 0.5);

  const auto idle = *EnumerateChannel(Rad(*DeterministicPmf(2)), W("0000"), 4);
  EXPECT_EQ(idle[W("0000")], 1.0);
}

TEST(EnumerateChannelTest, SlotSemantics) {
  // Service of 3 slots starting in slot 1 ends in slot 3.
  const Policy three = LcfsPolicy{*DeterministicPmf(3)};
  EXPECT_EQ((*EnumerateChannel(three, W("10000"), 5))[W("00100")], 1.0);
  // A fresh arrival in the departure slot preempts it.
  EXPECT_EQ((*EnumerateChannel(three, W("10100"), 5))[W("00001")], 1.0);
  // FCFS keeps both and starts the second service after the first ends.
  const Policy fcfs = FcfsPolicy{*DeterministicPmf(3), 1.0};
  EXPECT_EQ((*EnumerateChannel(fcfs, W("1100000"), 7))[W("0010010")], 1.0);
  // DAD with period 2 dumps in slots 2 and 4, only if something arrived.
  const Policy dad = RadPolicy{*DeterministicPmf(2)};
  EXPECT_EQ((*EnumerateChannel(dad, W("1000"), 4))[W("0100")], 1.0);
  EXPECT_EQ((*EnumerateChannel(dad, W("0110"), 4))[W("0101")], 1.0);
  // Thinning drops the lone arrival half the time.
  const Policy thin = FcfsPolicy{*DeterministicPmf(1), 0.5};
  const auto row = *EnumerateChannel(thin, W("100"), 3);
  EXPECT_DOUBLE_EQ(row[W("100")], 0.5);
  EXPECT_DOUBLE_EQ(row[W("000")], 0.5);
}

TEST(EnumerateChannelTest, RowsAreNormalized) {
  testing::Gen gen(51);
  for (int trial = 0; trial < 60; ++trial) {
    const FinitePmf pmf = gen.Pmf(gen.Int(1, 6));
    const int n = static_cast<int>(gen.Int(1, 10));
    const Word x = static_cast<Word>(gen.Int(0, (1 << n) - 1));
    std::vector<Policy> policies = {LcfsPolicy{pmf},
                                    FcfsPolicy{pmf, gen.Uniform(0.1, 1.0)},
                                    RadPolicy{pmf}};
    for (const Policy& p : policies) {
      double total = 0.0;
      const std::vector<double> row = *EnumerateChannel(p, x, n);
      for (double v : row) {
        EXPECT_GE(v, 0.0);
        total += v;
      }
      EXPECT_NEAR(total, 1.0, 1e-9) << PolicyKind(p);
    }
  }
}

TEST(EnumerateChannelTest, HorizonLimit) {
  EXPECT_EQ(GetErrorKind(EnumerateChannel(Lcfs(0.5), 0, 15)),
            ErrorKind::kHorizonTooLarge);
  EXPECT_EQ(GetErrorKind(BruteForceMaxl(Lcfs(0.5), 15)),
            ErrorKind::kHorizonTooLarge);
}

TEST(BruteForceMaxlTest, Examples) {
  EXPECT_NEAR(BruteForceMaxl(Lcfs(0.5), 4)->bits, kFourLog2OnePointFive,
              1e-12);
  EXPECT_NEAR(BruteForceMaxl(Rad(*DeterministicPmf(2)), 4)->bits, 2.0, 1e-12);
  EXPECT_NEAR(BruteForceMaxl(Lcfs(1.0), 1)->bits, 1.0, 1e-12);
  EXPECT_EQ(BruteForceMaxl(Lcfs(0.5), 0)->bits, 0.0);
}

TEST(BruteForceMaxlTest, MatchesSmpClosedForm) {
  for (double beta : {0.3, 0.5, 1.0}) {
    for (int n = 1; n <= 10; ++n) {
      const double want = SmpLeakageBits(n, 1, beta)->bits;
      EXPECT_NEAR(BruteForceMaxl(Lcfs(beta), n)->bits, want, 1e-9)
          << beta << " " << n;
      EXPECT_NEAR(BruteForceMaxl(Fcfs(beta), n)->bits, want, 1e-9)
          << beta << " " << n;
    }
  }
}

TEST(BruteForceMaxlTest, ShiftedSmpMatchesClosedForm) {
  // SMP pmfs whose minimum is above one slot, both disciplines.
  testing::Gen gen(52);
  for (int trial = 0; trial < 12; ++trial) {
    const double beta = gen.Uniform(0.3, 1.0);
    const FinitePmf base = gen.SmpPmfWithHead(beta, 4);
    const Slots s1 = gen.Int(1, 3);
    const FinitePmf pmf = *ShiftPmf(base, s1 - 1);
    for (int n : {5, 9}) {
      const double want = SmpLeakageBits(n, s1, beta)->bits;
      EXPECT_NEAR(BruteForceMaxl(LcfsPolicy{pmf}, n)->bits, want, 1e-9);
      EXPECT_NEAR(BruteForceMaxl(FcfsPolicy{pmf, 1.0}, n)->bits, want, 1e-9);
    }
  }
}

TEST(BruteForceMaxlTest, FibonacciService) {
  const Policy two = LcfsPolicy{*DeterministicPmf(2)};
  for (int n = 1; n <= 12; ++n) {
    EXPECT_NEAR(BruteForceMaxl(two, n)->bits, SmpLeakageBits(n, 2, 1.0)->bits,
                1e-9);
  }
}

TEST(BruteForceMaxlTest, MatchesRadRecursion) {
  std::vector<FinitePmf> pmfs = {*DeterministicPmf(1), *DeterministicPmf(2),
                                 *DeterministicPmf(3), *UniformPmf(2),
                                 *UniformPmf(3),       *GeometricPmf(0.5),
                                 DdadPolicy(0.4)->ToPmf()};
  for (const FinitePmf& pmf : pmfs) {
    for (int n = 1; n <= 12; ++n) {
      EXPECT_NEAR(BruteForceMaxl(Rad(pmf), n)->bits,
                  RadLeakageBits(n, pmf).bits, 1e-9)
          << PmfToJson(pmf) << " n=" << n;
    }
  }
}

TEST(BruteForceMaxlTest, RandomRadPmfs) {
  testing::Gen gen(53);
  for (int trial = 0; trial < 20; ++trial) {
    const FinitePmf pmf = gen.Pmf(gen.Int(1, 8));
    const int n = static_cast<int>(gen.Int(1, 11));
    EXPECT_NEAR(BruteForceMaxl(Rad(pmf), n)->bits,
                RadLeakageBits(n, pmf).bits, 1e-9);
  }
}

TEST(BruteForceMaxlTest, TableIsNormalized) {
  const ChannelTable t = *BuildChannelTable(Fcfs(0.3), 9);
  EXPECT_LE(t.max_normalization_error, 1e-9);
  for (double p : t.ml_prob) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(BruteForceMaxlTest, ThinningOnlyLowersFcfsLeakage) {
  for (double beta : {0.3, 0.5}) {
    for (double alpha : {0.4, 0.7}) {
      for (int n : {4, 8}) {
        const double thinned =
            BruteForceMaxl(FcfsPolicy{*GreedySmpPmf(beta), alpha}, n)->bits;
        EXPECT_LT(thinned, SmpLeakageBits(n, 1, beta)->bits);
        EXPECT_GT(thinned, 0.0);
      }
    }
  }
}

TEST(VerifyMlInputTest, Examples) {
  EXPECT_TRUE(*VerifyMlInput(Lcfs(0.5), 6));
  EXPECT_TRUE(*VerifyMlInput(Rad(*GeometricPmf(0.5)), 8));
  for (int n = 1; n <= 8; ++n) EXPECT_TRUE(*VerifyMlInput(Lcfs(1.0), n));
  EXPECT_EQ(GetErrorKind(VerifyMlInput(Lcfs(0.5), 13)),
            ErrorKind::kHorizonTooLarge);
}

TEST(VerifyMlInputTest, CoupledAndDecoupledFamilies) {
  std::vector<Policy> policies = {
      Lcfs(0.3),
      Fcfs(0.3),
      Fcfs(0.5),
      LcfsPolicy{*DeterministicPmf(2)},
      FcfsPolicy{*ShiftPmf(*GreedySmpPmf(0.4), 1), 1.0},
      Rad(*UniformPmf(3)),
      Rad(DdadPolicy(0.4)->ToPmf()),
  };
  for (const Policy& p : policies) {
    EXPECT_TRUE(*VerifyMlInput(p, 8)) << PolicyKind(p);
  }
}

TEST(VerifyMlInputTest, DetectsWrongDesignatedInput) {
  // Non-SMP service: the designated input is not maximum likelihood.
  const std::vector<PmfEntry> rising = {{1, 0.2}, {2, 0.8}};
  EXPECT_FALSE(*VerifyMlInput(LcfsPolicy{*MakePmf(rising)}, 6));
}

}  // namespace
}  // namespace ageleak
