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

#include <cmath>
#include <vector>

#include "ageleak/status.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ageleak {
namespace {

TEST(MakePmfTest, PointMass) {
  const std::vector<PmfEntry> e = {{1, 1.0}};
  auto pmf = MakePmf(e);
  ASSERT_TRUE(pmf.ok());
  EXPECT_EQ(pmf->size(), 1u);
  EXPECT_EQ(pmf->min_duration(), 1);
  EXPECT_DOUBLE_EQ(pmf->at(1), 1.0);
  EXPECT_DOUBLE_EQ(pmf->at(2), 0.0);
}

TEST(MakePmfTest, SortsAndDropsZeroMass) {
  const std::vector<PmfEntry> e = {{3, 0.2}, {1, 0.4}, {5, 0.0}, {2, 0.4}};
  auto pmf = MakePmf(e);
  ASSERT_TRUE(pmf.ok());
  ASSERT_EQ(pmf->size(), 3u);
  EXPECT_EQ(pmf->entries()[0].duration, 1);
  EXPECT_EQ(pmf->max_duration(), 3);
  EXPECT_NEAR(pmf->tail(1), 0.6, 1e-15);
  EXPECT_NEAR(pmf->tail(0), 1.0, 1e-15);
  EXPECT_EQ(pmf->tail(3), 0.0);
}

TEST(MakePmfTest, Errors) {
  EXPECT_EQ(GetErrorKind(MakePmf({})), ErrorKind::kEmptyPmf);
  const std::vector<PmfEntry> heavy = {{1, 0.6}, {2, 0.6}};
  EXPECT_EQ(GetErrorKind(MakePmf(heavy)), ErrorKind::kUnnormalizedMass);
  const std::vector<PmfEntry> negative = {{1, 1.2}, {2, -0.2}};
  EXPECT_EQ(GetErrorKind(MakePmf(negative)), ErrorKind::kNegativeProbability);
  const std::vector<PmfEntry> zero_d = {{0, 1.0}};
  EXPECT_EQ(GetErrorKind(MakePmf(zero_d)), ErrorKind::kNonPositiveDuration);
  const std::vector<PmfEntry> dup = {{2, 0.5}, {2, 0.5}};
  EXPECT_EQ(GetErrorKind(MakePmf(dup)), ErrorKind::kDuplicateDuration);
  const std::vector<PmfEntry> within = {{1, 0.5}, {2, 0.5 + 5e-10}};
  EXPECT_TRUE(MakePmf(within).ok());
}

TEST(MakePmfTest, IdempotentOnRandomPmfs) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const FinitePmf p = gen.Pmf(gen.Int(1, 20));
    const std::vector<PmfEntry> copy(p.entries().begin(), p.entries().end());
    auto again = MakePmf(copy);
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(*again, p);
  }
}

TEST(PmfMomentsTest, Examples) {
  Moments d = PmfMoments(*DeterministicPmf(5));
  EXPECT_EQ(d.mean, 5.0);
  EXPECT_EQ(d.second_moment, 25.0);
  EXPECT_EQ(d.variance, 0.0);

  Moments u = PmfMoments(*UniformPmf(3));
  EXPECT_NEAR(u.mean, 2.0, 1e-15);
  EXPECT_NEAR(u.second_moment, 14.0 / 3.0, 1e-14);
  EXPECT_NEAR(u.variance, 2.0 / 3.0, 1e-14);

  const std::vector<PmfEntry> two = {{2, 0.4654}, {3, 0.5346}};
  EXPECT_NEAR(PmfMoments(*MakePmf(two)).mean, 2.5346, 1e-12);
}

TEST(PmfMomentsTest, DeterministicHasZeroVariance) {
  for (Slots tau = 1; tau <= 1000; ++tau) {
    const Moments m = PmfMoments(*DeterministicPmf(tau));
    ASSERT_EQ(m.variance, 0.0) << tau;
    ASSERT_EQ(m.mean, static_cast<double>(tau));
  }
}

TEST(PmfMomentsTest, VarianceIdentity) {
  testing::Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Moments m = PmfMoments(gen.Pmf(30));
    EXPECT_NEAR(m.variance, m.second_moment - m.mean * m.mean, 1e-10);
    EXPECT_GE(m.variance, -1e-12);
    EXPECT_GE(m.mean, 1.0);
  }
}

TEST(IsSmpTest, Examples) {
  SmpCheck geo = IsSmp(*GeometricPmf(0.5, 50));
  EXPECT_TRUE(geo.smp);
  EXPECT_EQ(geo.s_min, 1);

  const std::vector<PmfEntry> rising = {{1, 0.2}, {2, 0.8}};
  EXPECT_FALSE(IsSmp(*MakePmf(rising)).smp);

  const std::vector<PmfEntry> shifted = {{3, 0.5}, {4, 0.3}, {7, 0.2}};
  SmpCheck s = IsSmp(*MakePmf(shifted));
  EXPECT_TRUE(s.smp);
  EXPECT_EQ(s.s_min, 3);
}

TEST(IsSmpTest, HelpersAreSmpAndShiftPreservesIt) {
  for (Slots k = 1; k <= 50; ++k) EXPECT_TRUE(IsSmp(*UniformPmf(k)).smp);
  for (double mu : {0.05, 0.2, 0.5, 0.9, 1.0}) {
    EXPECT_TRUE(IsSmp(*GeometricPmf(mu)).smp) << mu;
  }
  testing::Gen gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const double beta = gen.Uniform(0.15, 1.0);
    const FinitePmf p = gen.SmpPmfWithHead(beta, 12);
    ASSERT_TRUE(IsSmp(p).smp);
    const Slots offset = gen.Int(1, 9);
    auto moved = ShiftPmf(p, offset);
    ASSERT_TRUE(moved.ok());
    const SmpCheck c = IsSmp(*moved);
    EXPECT_TRUE(c.smp);
    EXPECT_EQ(c.s_min, 1 + offset);
  }
}

TEST(GeometricPmfTest, Examples) {
  auto one = GeometricPmf(1.0, 10);
  ASSERT_TRUE(one.ok());
  EXPECT_EQ(*one, *DeterministicPmf(1));

  auto half = GeometricPmf(0.5, 50);
  ASSERT_TRUE(half.ok());
  EXPECT_EQ(half->at(1), 0.5);
  EXPECT_EQ(half->at(2), 0.25);
  EXPECT_LT(half->at(50), 1e-14);

  EXPECT_EQ(GetErrorKind(GeometricPmf(0.01, 50)), ErrorKind::kTailTooHeavy);
  EXPECT_TRUE(GeometricPmf(0.01, 50, /*allow_heavy_tail=*/true).ok());
  EXPECT_EQ(GetErrorKind(GeometricPmf(0.0, 50)), ErrorKind::kInvalidArgument);
}

TEST(GeometricPmfTest, AutoTruncationKeepsHeadExact) {
  for (double mu : {0.005, 0.03, 0.25, 0.75}) {
    auto p = GeometricPmf(mu);
    ASSERT_TRUE(p.ok()) << mu;
    EXPECT_EQ(p->at(1), mu);
    EXPECT_LE(std::pow(1.0 - mu, static_cast<double>(p->max_duration())),
              kGeometricTailBound);
    EXPECT_NEAR(PmfMoments(*p).mean, 1.0 / mu, 1e-6 / mu);
  }
  EXPECT_EQ(GetErrorKind(GeometricPmf(1e-4)), ErrorKind::kTailTooHeavy);
}

TEST(UniformPmfTest, Examples) {
  auto u = UniformPmf(3);
  ASSERT_TRUE(u.ok());
  EXPECT_NEAR(u->at(2), 1.0 / 3.0, 1e-16);
  EXPECT_EQ(*UniformPmf(1), *DeterministicPmf(1));
  EXPECT_EQ(GetErrorKind(UniformPmf(0)), ErrorKind::kNonPositiveDuration);
}

TEST(ShiftPmfTest, RejectsDurationsBelowOne) {
  EXPECT_EQ(GetErrorKind(ShiftPmf(*UniformPmf(3), -1)),
            ErrorKind::kNonPositiveDuration);
  auto back = ShiftPmf(*ShiftPmf(*UniformPmf(3), 4), -4);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, *UniformPmf(3));
}

TEST(PmfJsonTest, RoundTripIsExact) {
  testing::Gen gen(14);
  for (int trial = 0; trial < 100; ++trial) {
    const FinitePmf p = gen.Pmf(25);
    auto back = PmfFromJson(PmfToJson(p));
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(*back, p);
  }
  EXPECT_EQ(PmfToJson(*DeterministicPmf(4)), R"({"entries":[[4,1.0]]})");
}

TEST(PmfJsonTest, MalformedInput) {
  EXPECT_EQ(GetErrorKind(PmfFromJson("{")), ErrorKind::kParseError);
  EXPECT_EQ(GetErrorKind(PmfFromJson(R"({"entries": 3})")),
            ErrorKind::kParseError);
  EXPECT_EQ(GetErrorKind(PmfFromJson(R"({"entries": [[1.5, 1.0]]})")),
            ErrorKind::kParseError);
  EXPECT_EQ(GetErrorKind(PmfFromJson(R"({"entries": [[1, 0.7]]})")),
            ErrorKind::kUnnormalizedMass);
}

}  // namespace
}  // namespace ageleak
