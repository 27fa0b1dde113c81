// Copyright 2026 The Geomech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geomech/mechanism.h"

#include <cstdint>
#include <limits>
#include <vector>

#include "boost/math/distributions/chi_squared.hpp"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace geomech {
namespace {

using ::geomech::testing::M;
using ::geomech::testing::NonDerivableFixture;
using ::geomech::testing::Q;
using ::testing::HasSubstr;

// Upper 0.001 quantile of chi-square with `dof` degrees of freedom.
double ChiSquareCritical(int dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, 0.001));
}

TEST(GeometricFullPmfTest, CentralAndTailMasses) {
  EXPECT_EQ(*GeometricFullPmf(Q("1/2"), 0), Q("1/3"));
  EXPECT_EQ(*GeometricFullPmf(Q("1/5"), 0), Q("2/3"));
  EXPECT_EQ(*GeometricFullPmf(Q("1/2"), -2), Q("1/12"));
  EXPECT_EQ(*GeometricFullPmf(Q("1/2"), 2), Q("1/12"));
}

TEST(GeometricFullPmfTest, TruncatedSumMatchesSeriesTail) {
  // sum_{|z| <= 40} = 1 - 2 a^41 / (1 + a).
  const Rational alpha = Q("1/2");
  Rational sum = 0;
  for (int z = -40; z <= 40; ++z) sum += *GeometricFullPmf(alpha, z);
  EXPECT_EQ(sum, 1 - 2 * Pow(alpha, 41) / (1 + alpha));
  EXPECT_LT(1 - sum, Q("1/1000000000000"));
}

TEST(GeometricFullPmfTest, RejectsEndpoints) {
  EXPECT_FALSE(GeometricFullPmf(Q("0"), 0).ok());
  EXPECT_FALSE(GeometricFullPmf(Q("1"), 0).ok());
  EXPECT_FALSE(GeometricFullPmf(Q("3/2"), 0).ok());
}

TEST(GeometricRestrictedTest, KnownRows) {
  const Mechanism g = *GeometricRestricted(3, Q("1/4"));
  EXPECT_EQ(g.matrix(), *MatMul(g.matrix(), RMatrix::Identity(4)));
  EXPECT_THAT(
      std::vector<Rational>(g.row(0).begin(), g.row(0).end()),
      ::testing::ElementsAre(Q("4/5"), Q("3/20"), Q("3/80"), Q("1/80")));
  EXPECT_EQ(GeometricRestricted(1, Q("1/2"))->matrix(),
            M({{"2/3", "1/3"}, {"1/3", "2/3"}}));
  ASSERT_TRUE(g.alpha_claimed().has_value());
  EXPECT_EQ(*g.alpha_claimed(), Q("1/4"));
}

TEST(GeometricRestrictedTest, Endpoints) {
  const Mechanism constant = *GeometricRestricted(3, Q("1"));
  for (int i = 0; i <= 3; ++i) {
    EXPECT_THAT(
        std::vector<Rational>(constant.row(i).begin(), constant.row(i).end()),
        ::testing::ElementsAre(Q("1/2"), 0, 0, Q("1/2")));
  }
  EXPECT_EQ(GeometricRestricted(3, Q("0"))->matrix(), RMatrix::Identity(4));
  EXPECT_FALSE(GeometricRestricted(0, Q("1/2")).ok());
  EXPECT_FALSE(GeometricRestricted(3, Q("-1/2")).ok());
  EXPECT_FALSE(GeometricRestricted(3, Q("5/4")).ok());
}

// Folding the two-sided geometric onto {0..n}: column 0 collects
// sum_{m >= k} of the pmf at distance m, which is c a^k / (1 - a) with
// c = (1 - a)/(1 + a); column n mirrors it.
TEST(GeometricRestrictedTest, EqualsCollapsedFullPmf) {
  for (const char* a : {"1/4", "1/2", "3/4"}) {
    const Rational alpha = Q(a);
    const Rational c = (1 - alpha) / (1 + alpha);
    for (int n = 1; n <= 6; ++n) {
      const Mechanism g = *GeometricRestricted(n, alpha);
      for (int k = 0; k <= n; ++k) {
        EXPECT_EQ(g.prob(k, 0), c * Pow(alpha, k) / (1 - alpha));
        EXPECT_EQ(g.prob(k, n), c * Pow(alpha, n - k) / (1 - alpha));
        for (int z = 1; z < n; ++z) {
          EXPECT_EQ(g.prob(k, z), *GeometricFullPmf(alpha, z - k));
        }
      }
    }
  }
}

TEST(MechanismTest, CreateValidates) {
  EXPECT_FALSE(Mechanism::Create(M({{"1/2", "1/3"}, {"1/2", "1/2"}})).ok());
  EXPECT_FALSE(Mechanism::Create(M({{"3/2", "-1/2"}, {"1/2", "1/2"}})).ok());
  EXPECT_FALSE(Mechanism::Create(M({{"1"}})).ok());
  EXPECT_FALSE(Mechanism::Create(RMatrix(2, 3)).ok());
}

TEST(CheckDpTest, GeometricIsPrivateAtItsOwnLevel) {
  EXPECT_TRUE(CheckDp(*GeometricRestricted(3, Q("1/4")), Q("1/4")).ok);
}

TEST(CheckDpTest, IdentityViolatesAtOrigin) {
  const DpVerdict verdict =
      CheckDp(*Mechanism::Create(RMatrix::Identity(2)), Q("1/2"));
  EXPECT_FALSE(verdict.ok);
  EXPECT_EQ(verdict.row, 0);
  EXPECT_EQ(verdict.col, 0);
  EXPECT_EQ(verdict.x_row, 1);
  EXPECT_EQ(verdict.x_next, 0);
  ASSERT_TRUE(verdict.ratio_next_over_row.has_value());
  EXPECT_EQ(*verdict.ratio_next_over_row, 0);
  EXPECT_FALSE(verdict.ratio_row_over_next.has_value());
}

TEST(CheckDpTest, NonDerivableFixtureIsHalfPrivate) {
  EXPECT_TRUE(CheckDp(NonDerivableFixture(), Q("1/2")).ok);
  EXPECT_FALSE(CheckDp(NonDerivableFixture(), Q("2/3")).ok);
}

TEST(CheckDpTest, GeometricLevelIsTight) {
  const std::vector<const char*> grid = {"1/5", "1/4", "1/3", "1/2",
                                         "2/3", "3/4", "9/10"};
  for (const char* a : grid) {
    for (int n = 1; n <= 5; ++n) {
      const Mechanism g = *GeometricRestricted(n, Q(a));
      EXPECT_TRUE(CheckDp(g, Q(a)).ok);
      EXPECT_FALSE(CheckDp(g, Q(a) + Q("1/1000")).ok) << a << " n=" << n;
      for (const char* b : grid) {
        EXPECT_EQ(CheckDp(g, Q(b)).ok, Q(b) <= Q(a)) << a << " vs " << b;
      }
    }
  }
}

TEST(CheckDpTest, EndpointsOfAlpha) {
  const Mechanism identity = *Mechanism::Create(RMatrix::Identity(3));
  EXPECT_TRUE(CheckDp(identity, Q("0")).ok);
  EXPECT_TRUE(CheckDp(*GeometricRestricted(2, Q("1")), Q("1")).ok);
}

TEST(InverseCdfTest, WalksColumnsLeftToRight) {
  const std::vector<Rational> halves = {Q("1/2"), Q("1/2")};
  const uint64_t half = uint64_t{1} << 63;
  EXPECT_EQ(InverseCdf(halves, 0), 0);
  EXPECT_EQ(InverseCdf(halves, half - 1), 0);
  EXPECT_EQ(InverseCdf(halves, half), 1);
  EXPECT_EQ(InverseCdf(halves, std::numeric_limits<uint64_t>::max()), 1);
  const std::vector<Rational> gaps = {0, Q("1/2"), 0, Q("1/2"), 0};
  EXPECT_EQ(InverseCdf(gaps, 0), 1);
  EXPECT_EQ(InverseCdf(gaps, std::numeric_limits<uint64_t>::max()), 3);
}

TEST(SampleTest, PointMassAlwaysReturnsItsColumn) {
  const Mechanism identity = *Mechanism::Create(RMatrix::Identity(4));
  for (uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_EQ(Sample(identity, 2, seed)->output, 2);
  }
}

TEST(SampleTest, ReplaysDeterministically) {
  const Mechanism g = *GeometricRestricted(5, Q("1/2"));
  for (uint64_t seed : {0ull, 1ull, 42ull, 0xdeadbeefull}) {
    EXPECT_EQ(Sample(g, 3, seed)->output, Sample(g, 3, seed)->output);
    EXPECT_EQ(Sample(g, 3, seed)->seed, seed);
  }
}

TEST(SampleTest, OutOfRangeTrueResult) {
  const Mechanism g = *GeometricRestricted(2, Q("1/2"));
  EXPECT_FALSE(Sample(g, 3, 1).ok());
  EXPECT_FALSE(Sample(g, -1, 1).ok());
}

TEST(SampleTest, FrequencyWithinChernoffBand) {
  const Mechanism g = *GeometricRestricted(1, Q("1/2"));
  int zeros = 0;
  const int draws = 60000;
  for (int seed = 0; seed < draws; ++seed)
    zeros += Sample(g, 0, seed)->output == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / draws, 2.0 / 3.0, 0.01);
}

TEST(SampleTest, ChiSquareGoodnessOfFit) {
  const Mechanism g = *GeometricRestricted(4, Q("2/3"));
  const int draws = 50000;
  for (int row : {0, 2}) {
    std::vector<int> counts(5, 0);
    for (int seed = 0; seed < draws; ++seed) {
      ++counts[Sample(g, row, 1000003ull * row + seed)->output];
    }
    double statistic = 0;
    for (int r = 0; r < 5; ++r) {
      const double expected = g.prob(row, r).get_d() * draws;
      statistic += (counts[r] - expected) * (counts[r] - expected) / expected;
    }
    EXPECT_LT(statistic, ChiSquareCritical(4)) << "row " << row;
  }
}

TEST(ConsumerProfileTest, BuiltInLosses) {
  EXPECT_EQ(MakeLoss(LossKind::kAbs, 2),
            M({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}}));
  EXPECT_EQ(MakeLoss(LossKind::kSquare, 2),
            M({{"0", "1", "4"}, {"1", "0", "1"}, {"4", "1", "0"}}));
  EXPECT_EQ(MakeLoss(LossKind::kZeroOne, 2),
            M({{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}}));
  EXPECT_FALSE(ParseLossKind("linf").ok());
}

TEST(ConsumerProfileTest, RejectsNonMonotoneLoss) {
  auto profile = ConsumerProfile::Create(
      M({{"0", "2", "1"}, {"1", "0", "1"}, {"2", "1", "0"}}), {0, 1, 2});
  ASSERT_FALSE(profile.ok());
  EXPECT_THAT(profile.status().message(), HasSubstr("l(0,1)"));
  EXPECT_THAT(profile.status().message(), HasSubstr("l(0,2)"));

  auto left = ConsumerProfile::Create(
      M({{"0", "1", "2"}, {"1", "0", "1"}, {"0", "1", "0"}}), {0});
  ASSERT_FALSE(left.ok());
  EXPECT_THAT(left.status().message(), HasSubstr("l(2,0)"));
}

TEST(ConsumerProfileTest, SideInformationIsNormalized) {
  auto profile = ConsumerProfile::Create(LossKind::kAbs, 3, {3, 1, 1});
  ASSERT_TRUE(profile.ok());
  EXPECT_THAT(profile->side_info(), ::testing::ElementsAre(1, 3));
  EXPECT_FALSE(ConsumerProfile::Create(LossKind::kAbs, 3, {}).ok());
  EXPECT_FALSE(ConsumerProfile::Create(LossKind::kAbs, 3, {4}).ok());
  EXPECT_FALSE(ConsumerProfile::Create(LossKind::kAbs, 3, {-1}).ok());
}

TEST(MaxLossTest, Examples) {
  const auto full = [](LossKind kind, int n) {
    std::vector<int> side;
    for (int i = 0; i <= n; ++i) side.push_back(i);
    return *ConsumerProfile::Create(kind, n, side);
  };
  EXPECT_EQ(*MaxLoss(*Mechanism::Create(RMatrix::Identity(4)),
                     full(LossKind::kSquare, 3)),
            0);
  EXPECT_EQ(
      *MaxLoss(*GeometricRestricted(1, Q("1/2")), full(LossKind::kZeroOne, 1)),
      Q("1/3"));
  EXPECT_EQ(*MaxLoss(*Mechanism::Create(M({{"1/2", "1/2"}, {"1/2", "1/2"}})),
                     full(LossKind::kAbs, 1)),
            Q("1/2"));
  EXPECT_FALSE(
      MaxLoss(*GeometricRestricted(2, Q("1/2")), full(LossKind::kAbs, 1)).ok());
}

TEST(MaxLossTest, RestrictsToSideInformation) {
  // Rows 0 and 1 of geometric(3, 1/4) are [4/5 3/20 3/80 1/80] and
  // [1/5 3/5 3/20 1/20].
  const Mechanism g = *GeometricRestricted(3, Q("1/4"));
  const Rational row0 = Q("3/20") + 2 * Q("3/80") + 3 * Q("1/80");
  const Rational row1 = Q("1/5") + Q("3/20") + 2 * Q("1/20");
  auto only1 = *ConsumerProfile::Create(LossKind::kAbs, 3, {1});
  auto only0 = *ConsumerProfile::Create(LossKind::kAbs, 3, {0});
  EXPECT_EQ(*MaxLoss(g, only0), row0);
  EXPECT_EQ(*MaxLoss(g, only1), row1);
}

}  // namespace
}  // namespace geomech
