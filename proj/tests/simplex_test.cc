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

#include "geomech/simplex.h"

#include <array>
#include <optional>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace geomech {
namespace {

using ::geomech::testing::Q;

bool Satisfies(const LinearProgram& lp, const std::vector<Rational>& v) {
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.nonneg[j] && sgn(v[j]) < 0) return false;
  }
  for (const Constraint& c : lp.constraints) {
    Rational lhs = 0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += c.coefficients[j] * v[j];
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

TEST(SimplexTest, OneVariableLowerBound) {
  LinearProgram lp = LinearProgram::WithVariables(1);
  lp.objective = {1};
  lp.Add({1}, Relation::kGreaterEqual, 3);
  auto solution = SolveLp(lp);
  ASSERT_TRUE(solution.ok());
  EXPECT_EQ(solution->status, LpStatus::kOptimal);
  EXPECT_EQ(solution->value, 3);
  EXPECT_EQ(solution->assignment[0], 3);
}

TEST(SimplexTest, EqualityConstrainedSum) {
  LinearProgram lp = LinearProgram::WithVariables(2);
  lp.objective = {1, 1};
  lp.Add({1, 1}, Relation::kEqual, 1);
  auto solution = SolveLp(lp);
  ASSERT_TRUE(solution.ok());
  EXPECT_EQ(solution->status, LpStatus::kOptimal);
  EXPECT_EQ(solution->value, 1);
  EXPECT_TRUE(Satisfies(lp, solution->assignment));
}

TEST(SimplexTest, Infeasible) {
  LinearProgram lp = LinearProgram::WithVariables(1);
  lp.Add({1}, Relation::kLessEqual, 1);
  lp.Add({1}, Relation::kGreaterEqual, 2);
  EXPECT_EQ(SolveLp(lp)->status, LpStatus::kInfeasible);
}

TEST(SimplexTest, Unbounded) {
  LinearProgram lp = LinearProgram::WithVariables(2);
  lp.objective = {-1, 0};
  lp.Add({1, -1}, Relation::kLessEqual, 1);
  EXPECT_EQ(SolveLp(lp)->status, LpStatus::kUnbounded);
}

TEST(SimplexTest, FreeVariable) {
  // minimize x subject to x >= -5/2 with x free.
  LinearProgram lp = LinearProgram::WithVariables(1);
  lp.nonneg = {false};
  lp.objective = {1};
  lp.Add({1}, Relation::kGreaterEqual, Q("-5/2"));
  auto solution = SolveLp(lp);
  ASSERT_EQ(solution->status, LpStatus::kOptimal);
  EXPECT_EQ(solution->value, Q("-5/2"));
  EXPECT_EQ(solution->assignment[0], Q("-5/2"));
}

TEST(SimplexTest, RedundantEqualitiesAreDropped) {
  LinearProgram lp = LinearProgram::WithVariables(3);
  lp.objective = {1, 2, 3};
  lp.Add({1, 1, 1}, Relation::kEqual, 1);
  lp.Add({2, 2, 2}, Relation::kEqual, 2);
  lp.Add({0, 1, 1}, Relation::kGreaterEqual, Q("1/2"));
  auto solution = SolveLp(lp);
  ASSERT_EQ(solution->status, LpStatus::kOptimal);
  EXPECT_EQ(solution->value, Q("3/2"));
  EXPECT_TRUE(Satisfies(lp, solution->assignment));
}

TEST(SimplexTest, MalformedProgram) {
  LinearProgram lp = LinearProgram::WithVariables(2);
  lp.Add({1}, Relation::kEqual, 1);
  EXPECT_FALSE(SolveLp(lp).ok());
}

// Beale's example cycles forever under the largest-coefficient rule.
TEST(SimplexTest, BlandsRuleTerminatesOnCyclingExample) {
  LinearProgram lp = LinearProgram::WithVariables(4);
  lp.objective = {Q("-3/4"), 20, Q("-1/2"), 6};
  lp.Add({Q("1/4"), -8, -1, 9}, Relation::kLessEqual, 0);
  lp.Add({Q("1/2"), -12, Q("-1/2"), 3}, Relation::kLessEqual, 0);
  lp.Add({0, 0, 1, 0}, Relation::kLessEqual, 1);
  auto solution = SolveLp(lp);
  ASSERT_EQ(solution->status, LpStatus::kOptimal);
  EXPECT_EQ(solution->value, Q("-5/4"));
  EXPECT_TRUE(Satisfies(lp, solution->assignment));
}

// Brute force for two variables: the optimum of a bounded feasible LP sits
// at the intersection of two tight constraints (bounds included).
std::optional<Rational> VertexOracle(const LinearProgram& lp) {
  struct Line {
    Rational a, b, c;  // a x + b y = c
  };
  std::vector<Line> lines = {{1, 0, 0}, {0, 1, 0}};
  for (const Constraint& c : lp.constraints) {
    lines.push_back({c.coefficients[0], c.coefficients[1], c.rhs});
  }
  std::optional<Rational> best;
  for (std::size_t p = 0; p < lines.size(); ++p) {
    for (std::size_t q = p + 1; q < lines.size(); ++q) {
      const Rational det = lines[p].a * lines[q].b - lines[p].b * lines[q].a;
      if (sgn(det) == 0) continue;
      const Rational x =
          (lines[p].c * lines[q].b - lines[p].b * lines[q].c) / det;
      const Rational y =
          (lines[p].a * lines[q].c - lines[p].c * lines[q].a) / det;
      if (!Satisfies(lp, {x, y})) continue;
      const Rational value = lp.objective[0] * x + lp.objective[1] * y;
      if (!best || value < *best) best = value;
    }
  }
  return best;
}

TEST(SimplexTest, MatchesVertexEnumerationOnRandomBoundedPrograms) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-4, 4), rhs(0, 8);
  int optimal = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp = LinearProgram::WithVariables(2);
    lp.objective = {coef(rng), coef(rng)};
    lp.Add({1, 0}, Relation::kLessEqual, 6);  // keep the region bounded
    lp.Add({0, 1}, Relation::kLessEqual, 6);
    for (int k = 0; k < 3; ++k) {
      const Relation rel =
          std::array{Relation::kLessEqual, Relation::kGreaterEqual,
                     Relation::kEqual}[rhs(rng) % 3];
      lp.Add({coef(rng), coef(rng)}, rel, rhs(rng) - 2);
    }
    auto solution = SolveLp(lp);
    ASSERT_TRUE(solution.ok());
    const std::optional<Rational> oracle = VertexOracle(lp);
    if (!oracle) {
      EXPECT_EQ(solution->status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(solution->status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_EQ(solution->value, *oracle) << "trial " << trial;
    EXPECT_TRUE(Satisfies(lp, solution->assignment));
    ++optimal;
  }
  EXPECT_GT(optimal, 50);
}

}  // namespace
}  // namespace geomech
