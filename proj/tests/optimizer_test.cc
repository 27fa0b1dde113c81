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

#include "geomech/optimizer.h"

#include <algorithm>
#include <iostream>
#include <random>
#include <vector>

#include "geomech/json_io.h"
#include "geomech/random_instances.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace geomech {
namespace {

using ::geomech::testing::M;
using ::geomech::testing::Q;

std::vector<int> Range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

ConsumerProfile Profile(LossKind kind, int n, std::vector<int> side) {
  return *ConsumerProfile::Create(kind, n, std::move(side));
}

TEST(MechanismProgramTest, Shape) {
  const LinearProgram lp =
      MechanismProgram(3, Q("1/4"), Profile(LossKind::kAbs, 3, {1, 2}));
  EXPECT_EQ(lp.num_vars, 17);
  EXPECT_EQ(lp.constraints.size(), 2u + 2 * 3 * 4 + 4);
  EXPECT_EQ(lp.objective[16], 1);
}

TEST(OptimalMechanismTest, TwoByTwoZeroOneLoss) {
  auto result =
      OptimalMechanism(1, Q("1/2"), Profile(LossKind::kZeroOne, 1, {0, 1}));
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->loss, Q("1/3"));
  EXPECT_EQ(result->mechanism.matrix(), M({{"2/3", "1/3"}, {"1/3", "2/3"}}));
}

TEST(OptimalMechanismTest, ZeroLossIsFree) {
  for (int n = 1; n <= 4; ++n) {
    auto profile = *ConsumerProfile::Create(RMatrix(n + 1, n + 1), Range(0, n));
    auto result = OptimalMechanism(n, Q("1/3"), profile);
    ASSERT_TRUE(result.ok());
    EXPECT_EQ(result->loss, 0);
    EXPECT_TRUE(CheckDp(result->mechanism, Q("1/3")).ok);
  }
}

TEST(OptimalMechanismTest, RejectsEndpointsAndShapeMismatch) {
  const ConsumerProfile profile = Profile(LossKind::kAbs, 2, Range(0, 2));
  EXPECT_FALSE(OptimalMechanism(2, Q("0"), profile).ok());
  EXPECT_FALSE(OptimalMechanism(2, Q("1"), profile).ok());
  EXPECT_FALSE(OptimalMechanism(3, Q("1/2"), profile).ok());
}

TEST(OptimalMechanismTest, GeometricInteractionAchievesTheOptimum) {
  const ConsumerProfile profile = Profile(LossKind::kAbs, 3, Range(0, 3));
  auto direct = OptimalMechanism(3, Q("1/4"), profile);
  auto interaction =
      OptimalInteraction(*GeometricRestricted(3, Q("1/4")), profile);
  ASSERT_TRUE(direct.ok() && interaction.ok());
  EXPECT_EQ(direct->loss, interaction->loss);
  EXPECT_EQ(*MaxLoss(interaction->induced, profile), direct->loss);
}

TEST(OptimalMechanismTest, InvariantsOnRandomProfiles) {
  std::mt19937_64 rng(2024);
  const std::vector<const char*> alphas = {"1/4", "1/3", "1/2", "2/3"};
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + trial % 4;
    const ConsumerProfile profile = RandomMonotoneProfile(n, rng);
    std::optional<Rational> previous;
    for (const char* a : alphas) {
      const Rational alpha = Q(a);
      auto result = OptimalMechanism(n, alpha, profile);
      ASSERT_TRUE(result.ok());
      EXPECT_TRUE(CheckDp(result->mechanism, alpha).ok);
      EXPECT_TRUE(IsRowStochastic(result->mechanism.matrix()));
      EXPECT_EQ(*MaxLoss(result->mechanism, profile), result->loss);
      // The geometric mechanism is feasible for the same program.
      EXPECT_LE(result->loss,
                *MaxLoss(*GeometricRestricted(n, alpha), profile));
      // A larger alpha only shrinks the feasible set.
      if (previous) EXPECT_GE(result->loss, *previous);
      previous = result->loss;
    }
  }
}

TEST(OptimalMechanismTest, UniversalOptimalitySmallSweep) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    for (const char* a : {"1/4", "1/2", "2/3"}) {
      const Rational alpha = Q(a);
      const Mechanism g = *GeometricRestricted(n, alpha);
      std::vector<ConsumerProfile> profiles = {
          Profile(LossKind::kAbs, n, Range(0, n)),
          Profile(LossKind::kSquare, n, Range(1, n)),
          Profile(LossKind::kZeroOne, n, {n}),
      };
      for (int k = 0; k < 5; ++k)
        profiles.push_back(RandomMonotoneProfile(n, rng));
      for (const ConsumerProfile& profile : profiles) {
        EXPECT_EQ(OptimalInteraction(g, profile)->loss,
                  OptimalMechanism(n, alpha, profile)->loss)
            << "n=" << n << " alpha=" << a;
      }
    }
  }
}

TEST(OptimalMechanismTest, LexicographicKeepsLossAndLowersSecondaryObjective) {
  auto secondary = [](const Mechanism& m) {
    Rational total = 0;
    for (int i = 0; i <= m.n(); ++i) {
      for (int r = 0; r <= m.n(); ++r) total += m.prob(i, r) * std::abs(i - r);
    }
    return total;
  };
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const ConsumerProfile profile = RandomMonotoneProfile(n, rng);
    auto plain = OptimalMechanism(n, Q("1/2"), profile);
    auto lex = OptimalMechanism(n, Q("1/2"), profile, {.lexicographic = true});
    ASSERT_TRUE(plain.ok() && lex.ok());
    EXPECT_EQ(plain->loss, lex->loss);
    EXPECT_LE(secondary(lex->mechanism), secondary(plain->mechanism));
    EXPECT_TRUE(CheckDp(lex->mechanism, Q("1/2")).ok);
  }
}

TEST(OptimalInteractionTest, OptimalDeploymentNeedsNoReinterpretation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const ConsumerProfile profile = RandomMonotoneProfile(n, rng);
    auto best = OptimalMechanism(n, Q("1/3"), profile);
    ASSERT_TRUE(best.ok());
    auto again = OptimalInteraction(best->mechanism, profile);
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(again->loss, best->loss);
  }
}

// Value of the matrix game min_q max_{i in S} sum_r q_r l(i, r) by support
// enumeration: every basic optimum has equally many tight rows I and
// support columns J, so solving each square system
//   sum_{j in J} l(i, j) q_j - d = 0 (i in I),  sum_{j in J} q_j = 1
// and keeping feasible solutions yields the value as the smallest d.
Rational MatrixGameValue(const ConsumerProfile& profile) {
  const std::vector<int>& rows = profile.side_info();
  const int cols = profile.n() + 1;
  std::optional<Rational> best;
  for (unsigned row_mask = 1; row_mask < (1u << rows.size()); ++row_mask) {
    std::vector<int> tight;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if ((row_mask >> k) & 1) tight.push_back(rows[k]);
    }
    for (unsigned col_mask = 1; col_mask < (1u << cols); ++col_mask) {
      std::vector<int> support;
      for (int j = 0; j < cols; ++j) {
        if ((col_mask >> j) & 1) support.push_back(j);
      }
      if (support.size() != tight.size()) continue;
      const std::size_t k = support.size();
      // Unknowns (q_J, d).
      std::vector<Rational> system((k + 1) * (k + 1));
      std::vector<Rational> rhs(k + 1);
      for (std::size_t t = 0; t < k; ++t) {
        for (std::size_t s = 0; s < k; ++s) {
          system[t * (k + 1) + s] = profile.loss()(tight[t], support[s]);
        }
        system[t * (k + 1) + k] = -1;
      }
      for (std::size_t s = 0; s < k; ++s) system[k * (k + 1) + s] = 1;
      rhs[k] = 1;
      auto inverse = Inverse(*RMatrix::Create(k + 1, k + 1, system));
      if (!inverse.ok()) continue;
      std::vector<Rational> q(cols);
      Rational d = 0;
      bool feasible = true;
      for (std::size_t s = 0; s <= k; ++s) {
        Rational value = 0;
        for (std::size_t t = 0; t <= k; ++t) value += (*inverse)(s, t) * rhs[t];
        if (s == k) {
          d = value;
        } else {
          feasible = feasible && sgn(value) >= 0;
          q[support[s]] = value;
        }
      }
      for (int i : rows) {
        Rational payoff = 0;
        for (int j = 0; j < cols; ++j) payoff += profile.loss()(i, j) * q[j];
        feasible = feasible && payoff <= d;
      }
      if (feasible && (!best || d < *best)) best = d;
    }
  }
  return *best;
}

// Identical rows carry no information, so the consumer faces a matrix game
// against the unknown input. Randomizing over answers can beat every fixed
// answer (n = 1, abs loss: 1/2 versus 1).
TEST(OptimalInteractionTest, ConstantMechanismReducesToMatrixGame) {
  std::mt19937_64 rng(5);
  const Mechanism constant_one = *GeometricRestricted(1, Q("1"));
  EXPECT_EQ(
      OptimalInteraction(constant_one, Profile(LossKind::kAbs, 1, Range(0, 1)))
          ->loss,
      Q("1/2"));
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial % 4;
    const ConsumerProfile profile =
        trial < 3 ? Profile(static_cast<LossKind>(trial), n, Range(0, n))
                  : RandomMonotoneProfile(n, rng);
    const Mechanism constant = *GeometricRestricted(n, Q("1"));
    std::optional<Rational> best_fixed_answer;
    for (int answer = 0; answer <= n; ++answer) {
      Rational worst = 0;
      for (int i : profile.side_info()) {
        worst = std::max(worst, Rational(profile.loss()(i, answer)));
      }
      if (!best_fixed_answer || worst < *best_fixed_answer) {
        best_fixed_answer = worst;
      }
    }
    auto result = OptimalInteraction(constant, profile);
    ASSERT_TRUE(result.ok());
    EXPECT_EQ(result->loss, MatrixGameValue(profile)) << "trial " << trial;
    EXPECT_LE(result->loss, *best_fixed_answer);
  }
}

TEST(OptimalInteractionTest, SideInformationIsExploited) {
  const Mechanism g = *GeometricRestricted(3, Q("1/4"));
  const ConsumerProfile profile = Profile(LossKind::kAbs, 3, {2, 3});
  auto result = OptimalInteraction(g, profile);
  ASSERT_TRUE(result.ok());
  EXPECT_LT(result->loss, *MaxLoss(g, profile));
  EXPECT_EQ(result->induced.matrix(),
            *MatMul(g.matrix(), result->post.matrix()));
}

TEST(OptimalInteractionTest, InducedMechanismStaysPrivate) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial % 4;
    const Rational alpha = Q(trial % 2 ? "1/3" : "1/2");
    const Mechanism deployed = RandomDpMechanism(n, alpha, rng);
    auto result = OptimalInteraction(deployed, RandomMonotoneProfile(n, rng));
    ASSERT_TRUE(result.ok());
    EXPECT_TRUE(CheckDp(result->induced, alpha).ok);
  }
}

TEST(OptimalInteractionTest, ShapeMismatch) {
  EXPECT_FALSE(OptimalInteraction(*GeometricRestricted(3, Q("1/2")),
                                  Profile(LossKind::kAbs, 2, {0}))
                   .ok());
}

TEST(RowPatternTest, GeometricHasAdjacentBreakpoints) {
  const auto patterns =
      RowPatternDiagnostic(*GeometricRestricted(3, Q("1/2")), Q("1/2"));
  ASSERT_EQ(patterns.size(), 3u);
  for (const RowPairPattern& p : patterns) {
    EXPECT_TRUE(p.matches);
    EXPECT_EQ(p.prefix_end, p.row);
    EXPECT_EQ(p.suffix_start, p.row + 1);
  }
}

TEST(RowPatternTest, UniformFailsEverywhere) {
  const Mechanism uniform = *Mechanism::Create(
      M({{"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}}));
  for (const RowPairPattern& p : RowPatternDiagnostic(uniform, Q("1/2"))) {
    EXPECT_FALSE(p.matches);
    EXPECT_EQ(p.prefix_end, -1);
    EXPECT_EQ(p.suffix_start, 3);
  }
}

TEST(RowPatternTest, RecordsLexicographicOptimum) {
  auto result =
      OptimalMechanism(2, Q("1/2"), Profile(LossKind::kAbs, 2, Range(0, 2)),
                       {.lexicographic = true});
  ASSERT_TRUE(result.ok());
  const auto patterns = RowPatternDiagnostic(result->mechanism, Q("1/2"));
  EXPECT_EQ(patterns.size(), 2u);
  std::cout << "lexicographic optimum: " << ToJson(result->mechanism).dump()
            << "\npatterns: " << ToJson(patterns).dump() << "\n";
}

}  // namespace
}  // namespace geomech
