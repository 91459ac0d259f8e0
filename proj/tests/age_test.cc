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

#include "ageleak/age.h"

#include <cmath>
#include <vector>

#include "ageleak/optimizer.h"
#include "ageleak/status.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ageleak {
namespace {

constexpr double kDdadAgeAtRate04 = 3.81638219897624331;

FinitePmf Greedy04() {
  const std::vector<PmfEntry> e = {{1, 0.4}, {2, 0.4}, {3, 0.2}};
  return *MakePmf(e);
}

TEST(LcfsAgeTest, Examples) {
  EXPECT_NEAR(LcfsAge(0.5, *GeometricPmf(0.25))->delta, 6.0, 1e-9);
  EXPECT_EQ(LcfsAge(0.5, *DeterministicPmf(1))->delta, 3.0);
  EXPECT_NEAR(LcfsAge(0.5, Greedy04())->delta, 1.0 + 1.0 / 0.325, 1e-12);
  EXPECT_EQ(GetErrorKind(LcfsAge(0.0, Greedy04())), ErrorKind::kInvalidLambda);
  EXPECT_EQ(GetErrorKind(LcfsAge(1.2, Greedy04())), ErrorKind::kInvalidLambda);
  // Every arrival preempts a service that needs two slots.
  EXPECT_EQ(GetErrorKind(LcfsAge(1.0, *DeterministicPmf(2))),
            ErrorKind::kUnstable);
}

TEST(FcfsAgeTest, Examples) {
  EXPECT_NEAR(FcfsAge(0.5, *DeterministicPmf(1))->delta, 3.0, 1e-12);
  EXPECT_NEAR(FcfsAge(0.5, *GeometricPmf(0.75))->delta, 34.0 / 9.0, 1e-9);
  EXPECT_EQ(GetErrorKind(FcfsAge(0.5, *DeterministicPmf(2))),
            ErrorKind::kUnstable);
  EXPECT_NEAR(FcfsAge(0.5, Greedy04())->delta, 527.0 / 65.0, 1e-12);
  EXPECT_NEAR(FcfsAge(0.5, Greedy04(), 0.5)->delta, 5.962237762237762, 1e-12);
  EXPECT_EQ(GetErrorKind(FcfsAge(0.5, Greedy04(), 0.0)),
            ErrorKind::kInvalidArgument);
}

TEST(FcfsAgeTest, GeometricServiceMatchesMbt) {
  for (double mu : {0.3, 0.5, 0.75, 1.0}) {
    for (double alpha : {0.2, 0.5, 1.0}) {
      // Rates chosen off the mu == alpha*lambda boundary, where the
      // truncated tail decides stability.
      for (double lambda : {0.1, 0.45, 0.9}) {
        auto mbt = MbtAge(alpha, mu, lambda);
        auto fcfs = FcfsAge(lambda, *GeometricPmf(mu), alpha);
        ASSERT_EQ(mbt.ok(), fcfs.ok()) << mu << " " << alpha << " " << lambda;
        if (mbt.ok()) EXPECT_NEAR(mbt->delta, fcfs->delta, 1e-7);
      }
    }
  }
}

TEST(MbtAgeTest, Examples) {
  EXPECT_EQ(MbtAge(1.0, 1.0, 0.5)->delta, 3.0);
  EXPECT_NEAR(MbtAge(0.5, 0.5, 0.5)->delta, 6.5, 1e-12);
  EXPECT_EQ(GetErrorKind(MbtAge(1.0, 0.4, 0.5)), ErrorKind::kUnstable);
}

TEST(RadAgeTest, Examples) {
  EXPECT_EQ(RadAge(0.5, *DeterministicPmf(5))->delta, 5.0);
  EXPECT_NEAR(RadAge(0.5, *GeometricPmf(0.25))->delta, 6.0, 1e-9);
  EXPECT_EQ(RadAge(0.5, *DeterministicPmf(1))->delta, 3.0);
  EXPECT_NEAR(RadAge(0.5, *UniformPmf(3))->delta, 11.0 / 3.0, 1e-12);
}

TEST(RadAgeTest, OrderingAtFixedMean) {
  for (int tau = 2; tau <= 40; ++tau) {
    const double dad = RadAge(0.5, *DeterministicPmf(tau))->delta;
    const double uni = RadAge(0.5, *UniformPmf(2 * tau - 1))->delta;
    const double geo = RadAge(0.5, *GeometricPmf(1.0 / tau))->delta;
    EXPECT_LT(dad, uni);
    EXPECT_LT(uni, geo);
  }
}

TEST(DdadAgeTest, Examples) {
  EXPECT_EQ(DdadAge(0.5, 5.0)->delta, 5.0);
  const DitherPolicy p = *DdadPolicy(0.4);
  EXPECT_NEAR(DdadAge(0.5, p.mean_period())->delta, kDdadAgeAtRate04, 1e-12);
  EXPECT_EQ(DdadAge(1.0, 1.0)->delta, 2.0);
  EXPECT_EQ(GetErrorKind(DdadAge(0.5, 0.5)), ErrorKind::kInvalidTau);
}

TEST(DdadAgeTest, MatchesTwoPointRadAge) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 500; ++trial) {
    const double tau = gen.Uniform(1.0, 40.0);
    const double lambda = gen.Uniform(0.01, 1.0);
    const Slots i = static_cast<Slots>(std::floor(tau));
    const double pj = tau - static_cast<double>(i);
    std::vector<PmfEntry> e = {{i, 1.0 - pj}, {i + 1, pj}};
    const double want = RadAge(lambda, *MakePmf(e))->delta;
    EXPECT_NEAR(DdadAge(lambda, tau)->delta, want, 1e-12 * want);
  }
}

TEST(AgeFloorTest, NoPolicyBeatsZeroDelay) {
  testing::Gen gen(32);
  for (int trial = 0; trial < 300; ++trial) {
    const double lambda = gen.Uniform(0.01, 1.0);
    const double floor = 1.0 + 1.0 / lambda;
    const FinitePmf p = gen.Pmf(15);
    EXPECT_GE(RadAge(lambda, p)->delta, floor - 1e-12);
    auto lcfs = LcfsAge(lambda, p);
    if (lcfs.ok()) EXPECT_GE(lcfs->delta, floor - 1e-12);
    auto fcfs = FcfsAge(lambda, p);
    if (fcfs.ok()) EXPECT_GE(fcfs->delta, floor - 1e-9);
  }
  EXPECT_EQ(LcfsAge(0.3, *DeterministicPmf(1))->delta, 1.0 + 1.0 / 0.3);
}

TEST(GeometricEquivalenceTest, LcfsMatchesRad) {
  for (double tau = 1.0; tau <= 60.0; tau += 1.5) {
    const FinitePmf g = *GeometricPmf(1.0 / tau);
    for (double lambda : {0.1, 0.5, 1.0}) {
      EXPECT_NEAR(LcfsAge(lambda, g)->delta, RadAge(lambda, g)->delta, 1e-6);
      EXPECT_NEAR(LcfsAge(lambda, g)->delta, 1.0 / lambda + tau, 1e-6);
    }
  }
}

TEST(MarkovAgeTest, Examples) {
  const MarkovSource slow{0.05, 0.2};
  EXPECT_EQ(MarkovEffectiveRate(slow), 0.2);
  EXPECT_NEAR(MarkovSourceAge(slow)->delta, 17.0, 1e-12);
  const MarkovSource fast{0.2, 0.05};
  EXPECT_EQ(MarkovEffectiveRate(fast), 0.8);
  EXPECT_NEAR(MarkovSourceAge(fast)->delta, 2.0, 1e-12);
  EXPECT_NEAR(MarkovMonitorAge(slow, MarkovServer::kDad, 5)->delta, 20.0,
              1e-12);
  EXPECT_NEAR(MarkovMonitorAge(slow, MarkovServer::kLcfsGeometric, 5)->delta,
              22.0, 1e-12);
  EXPECT_NEAR(MarkovMonitorAge(fast, MarkovServer::kLcfsGeometric, 2)->delta,
              4.0, 1e-12);
  EXPECT_EQ(GetErrorKind(MarkovSourceAge({0.0, 0.5})),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(GetErrorKind(MarkovMonitorAge(slow, MarkovServer::kDad, 0.5)),
            ErrorKind::kInvalidTau);
}

TEST(MarkovAgeTest, BernoulliReduction) {
  for (double lambda = 0.05; lambda < 1.0; lambda += 0.05) {
    const MarkovSource src{lambda, 1.0 - lambda};
    EXPECT_NEAR(MarkovEffectiveRate(src), lambda, 1e-15);
    EXPECT_NEAR(MarkovSourceAge(src)->delta, 1.0 / lambda, 1e-12);
    for (int tau = 1; tau <= 10; ++tau) {
      EXPECT_NEAR(MarkovMonitorAge(src, MarkovServer::kDad, tau)->delta,
                  RadAge(lambda, *DeterministicPmf(tau))->delta, 1e-12);
    }
  }
}

TEST(RenewalSamplingAgeTest, Examples) {
  const Moments b = BernoulliInterarrivalMoments(0.5);
  EXPECT_EQ(RenewalSamplingAge(b, PmfMoments(*DeterministicPmf(1))).delta, 3.0);
  EXPECT_EQ(RenewalSamplingAge(b, PmfMoments(*DeterministicPmf(5))).delta, 5.0);
  const Moments one = PmfMoments(*DeterministicPmf(1));
  EXPECT_EQ(RenewalSamplingAge(one, one).delta, 2.0);
}

TEST(RenewalSamplingAgeTest, ReproducesRadAge) {
  testing::Gen gen(33);
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = gen.Uniform(0.01, 1.0);
    const FinitePmf d = gen.Pmf(20);
    EXPECT_NEAR(
        RenewalSamplingAge(BernoulliInterarrivalMoments(lambda), PmfMoments(d))
            .delta,
        RadAge(lambda, d)->delta, 1e-9);
  }
}

}  // namespace
}  // namespace ageleak
