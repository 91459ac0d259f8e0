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

#include <cmath>
#include <vector>

#include "ageleak/age.h"
#include "ageleak/leakage.h"
#include "ageleak/status.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ageleak {
namespace {

constexpr double kPi04 = 0.46539803861923648;
constexpr double kTau04 = 2.53460196138076352;
constexpr double kGamma04 = 2.63276439795248661;

TEST(GreedySmpPmfTest, Examples) {
  EXPECT_EQ(*GreedySmpPmf(1.0), *DeterministicPmf(1));
  const FinitePmf p = *GreedySmpPmf(0.4);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.at(1), 0.4);
  EXPECT_EQ(p.at(2), 0.4);
  EXPECT_NEAR(p.at(3), 0.2, 1e-15);
  const FinitePmf h = *GreedySmpPmf(0.5);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.max_duration(), 2);
  EXPECT_EQ(GreedySmpPmf(0.1)->size(), 10u);
  EXPECT_EQ(GetErrorKind(GreedySmpPmf(0.0)), ErrorKind::kInvalidBeta);
  EXPECT_EQ(GetErrorKind(GreedySmpPmf(1.01)), ErrorKind::kInvalidBeta);
}

TEST(GreedySmpPmfTest, AlwaysSmpWithHeadBeta) {
  testing::Gen gen(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const double beta = gen.Uniform(1e-3, 1.0);
    auto p = GreedySmpPmf(beta);
    ASSERT_TRUE(p.ok()) << beta;
    const SmpCheck c = IsSmp(*p);
    EXPECT_TRUE(c.smp);
    EXPECT_EQ(c.s_min, 1);
    EXPECT_EQ(p->at(1), beta);
  }
}

TEST(GreedySmpPmfTest, BeatsRandomSmpCompetitors) {
  testing::Gen gen(42);
  for (double beta : {0.25, 0.4}) {
    const FinitePmf greedy = *GreedySmpPmf(beta);
    const Slots room = static_cast<Slots>(std::ceil(1.0 / beta));
    for (int trial = 0; trial < 200; ++trial) {
      const FinitePmf rival = gen.SmpPmfWithHead(beta, room + gen.Int(0, 8));
      for (double lambda : {0.1, 0.5, 0.9}) {
        EXPECT_LE(LcfsAge(lambda, greedy)->delta,
                  LcfsAge(lambda, rival)->delta + 1e-12);
      }
    }
  }
}

TEST(GreedySmpPmfTest, ShiftingToUnitMinimumHelps) {
  testing::Gen gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta = gen.Uniform(0.2, 1.0);
    const FinitePmf base = gen.SmpPmfWithHead(beta, 10);
    const FinitePmf late = *ShiftPmf(base, gen.Int(1, 5));
    const double lambda = gen.Uniform(0.05, 0.95);
    EXPECT_LT(LcfsAge(lambda, base)->delta, LcfsAge(lambda, late)->delta);
  }
}

TEST(DdadPolicyTest, Examples) {
  const DitherPolicy half = *DdadPolicy(0.5);
  EXPECT_EQ(half.i, 2);
  EXPECT_EQ(half.p_i, 1.0);
  EXPECT_TRUE(half.is_deterministic());
  EXPECT_EQ(half.ToPmf(), *DeterministicPmf(2));

  const DitherPolicy p = *DdadPolicy(0.4);
  EXPECT_EQ(p.i, 2);
  EXPECT_EQ(p.j, 3);
  EXPECT_NEAR(p.p_i, kPi04, 1e-12);
  EXPECT_NEAR(p.mean_period(), kTau04, 1e-12);
  EXPECT_LE(p.ConstraintResidual(), 1e-12);

  const DitherPolicy one = *DdadPolicy(1.0);
  EXPECT_EQ(one.i, 1);
  EXPECT_EQ(one.p_i, 1.0);

  EXPECT_EQ(GetErrorKind(DdadPolicy(0.0)), ErrorKind::kInvalidRate);
  EXPECT_EQ(GetErrorKind(DdadPolicy(1.5)), ErrorKind::kInvalidRate);
}

TEST(DdadPolicyTest, HitsTargetRateOnGrid) {
  for (int k = 1; k <= 100; ++k) {
    const double rate = k / 100.0;
    const DitherPolicy p = *DdadPolicy(rate);
    EXPECT_EQ(p.i, static_cast<Slots>(std::floor(1.0 / rate + 1e-9)));
    EXPECT_GT(p.p_i, 0.0);
    EXPECT_LE(p.p_i, 1.0);
    EXPECT_LE(p.ConstraintResidual(), 1e-9) << rate;
    EXPECT_NEAR(*RadRate(p.ToPmf()), rate, 1e-9) << rate;
    const DinkelbachCertificate c = DinkelbachCertify(p);
    EXPECT_TRUE(c.sandwich_ok) << rate;
    EXPECT_TRUE(c.convexity_ok) << rate;
    EXPECT_LE(c.residual, 1e-9);
  }
}

TEST(DinkelbachCertifyTest, Examples) {
  const DinkelbachCertificate dad = DinkelbachCertify(*DadAsDither(5));
  EXPECT_EQ(dad.gamma_star, 5.0);
  EXPECT_EQ(dad.residual, 0.0);
  EXPECT_TRUE(dad.sandwich_ok);

  const DinkelbachCertificate d = DinkelbachCertify(*DdadPolicy(0.4));
  EXPECT_NEAR(d.gamma_star, kGamma04, 1e-12);
  EXPECT_GT(d.gamma_star, 2.0);
  EXPECT_LT(d.gamma_star, 3.0);
  EXPECT_LE(d.residual, 1e-9);
  EXPECT_TRUE(d.convexity_ok);
  EXPECT_EQ(GetErrorKind(DadAsDither(0)), ErrorKind::kInvalidTau);
}

TEST(TwoPointOptimalityTest, Examples) {
  EXPECT_TRUE(*VerifyTwoPointOptimality(0.4, 8));
  EXPECT_TRUE(*VerifyTwoPointOptimality(0.5, 8));
  EXPECT_TRUE(*VerifyTwoPointOptimality(1.0, 8));
  EXPECT_TRUE(*VerifyTwoPointOptimality(1.0, 1));
  const TwoPointSearchResult r = *SearchTwoPointOptimum(0.4, 8);
  EXPECT_GT(r.vertices_checked, 1);
  EXPECT_NEAR(r.dinkelbach_gamma, kGamma04, 1e-9);
}

TEST(TwoPointOptimalityTest, HoldsAcrossRates) {
  for (int k = 10; k <= 100; ++k) {
    const double rate = k / 100.0;
    EXPECT_TRUE(*VerifyTwoPointOptimality(rate, 12)) << rate;
  }
}

TEST(TwoPointOptimalityTest, SupportOutsideSearchWindow) {
  // D-DAD needs period 10 or 11 here.
  EXPECT_FALSE(*VerifyTwoPointOptimality(0.095, 8));
  EXPECT_EQ(GetErrorKind(VerifyTwoPointOptimality(0.4, 13)),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(GetErrorKind(VerifyTwoPointOptimality(0.0, 8)),
            ErrorKind::kInvalidRate);
}

TEST(OptimalAlphaTest, Examples) {
  const AlphaChoice unit = *OptimalAlphaForFcfs(0.5, *DeterministicPmf(1));
  EXPECT_EQ(unit.alpha, 1.0);
  EXPECT_NEAR(unit.age.delta, 3.0, 1e-12);

  const AlphaChoice geo = *OptimalAlphaForFcfs(0.5, *GeometricPmf(0.2));
  EXPECT_LT(geo.alpha, 0.4);
  EXPECT_TRUE(std::isfinite(geo.age.delta));
  EXPECT_NEAR(FcfsAge(0.5, *GeometricPmf(0.2), geo.alpha)->delta,
              geo.age.delta, 1e-12);

  const AlphaChoice three = *OptimalAlphaForFcfs(0.5, *DeterministicPmf(3));
  EXPECT_LT(three.alpha, 2.0 / 3.0);
}

TEST(OptimalAlphaTest, IsLocalMinimum) {
  testing::Gen gen(44);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = gen.Uniform(0.1, 1.0);
    const FinitePmf s = gen.Pmf(8);
    const AlphaChoice best = *OptimalAlphaForFcfs(lambda, s);
    for (double step : {-1e-3, 1e-3}) {
      auto near = FcfsAge(lambda, s, best.alpha + step);
      if (near.ok()) EXPECT_GE(near->delta, best.age.delta - 1e-6);
    }
  }
}

TEST(OptimalAlphaTest, MbtMatchesGenericSearch) {
  for (double mu : {0.1, 0.2, 0.5, 0.9}) {
    const AlphaChoice closed = *OptimalAlphaForMbt(0.5, mu);
    const AlphaChoice generic = *OptimalAlphaForFcfs(0.5, *GeometricPmf(mu));
    EXPECT_NEAR(closed.age.delta, generic.age.delta, 1e-5) << mu;
  }
  EXPECT_EQ(GetErrorKind(OptimalAlphaForFcfs(0.0, *DeterministicPmf(1))),
            ErrorKind::kInvalidLambda);
}

TEST(OptimalAlphaTest, NoFeasibleAlpha) {
  EXPECT_EQ(GetErrorKind(OptimalAlphaForMbt(1.0, 1e-7)),
            ErrorKind::kNoFeasibleAlpha);
}

}  // namespace
}  // namespace ageleak
