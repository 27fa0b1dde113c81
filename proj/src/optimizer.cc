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

#include <cstdlib>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {
namespace {

absl::Status CheckShapes(int n, const ConsumerProfile& profile) {
  if (profile.n() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "profile has n = ", profile.n(), " but the query has n = ", n));
  }
  return absl::OkStatus();
}

absl::StatusOr<RMatrix> ReshapeSquare(const std::vector<Rational>& values,
                                      int size) {
  return RMatrix::Create(
      size, size,
      std::vector<Rational>(values.begin(), values.begin() + size * size));
}

absl::StatusOr<LpSolution> SolveExpectingOptimum(const LinearProgram& lp,
                                                 std::string_view what) {
  auto solution = SolveLp(lp);
  if (!solution.ok()) return solution.status();
  if (solution->status != LpStatus::kOptimal) {
    return absl::InternalError(
        absl::StrCat(std::string(what), " LP did not reach an optimum"));
  }
  return solution;
}

}  // namespace

LinearProgram MechanismProgram(int n, const Rational& alpha,
                               const ConsumerProfile& profile) {
  const int size = n + 1;
  const int d = size * size;
  auto var = [size](int i, int r) { return i * size + r; };
  LinearProgram lp = LinearProgram::WithVariables(d + 1);
  lp.objective[d] = 1;
  for (int i : profile.side_info()) {
    std::vector<Rational> row(d + 1);
    row[d] = 1;
    for (int r = 0; r < size; ++r) row[var(i, r)] = -profile.loss()(i, r);
    lp.Add(std::move(row), Relation::kGreaterEqual, 0);
  }
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < size; ++r) {
      std::vector<Rational> down(d + 1), up(d + 1);
      down[var(i, r)] = 1;
      down[var(i + 1, r)] = -alpha;
      up[var(i + 1, r)] = 1;
      up[var(i, r)] = -alpha;
      lp.Add(std::move(down), Relation::kGreaterEqual, 0);
      lp.Add(std::move(up), Relation::kGreaterEqual, 0);
    }
  }
  for (int i = 0; i < size; ++i) {
    std::vector<Rational> row(d + 1);
    for (int r = 0; r < size; ++r) row[var(i, r)] = 1;
    lp.Add(std::move(row), Relation::kEqual, 1);
  }
  return lp;
}

absl::StatusOr<OptimalMechanismResult> OptimalMechanism(
    int n, const Rational& alpha, const ConsumerProfile& profile,
    OptimizeOptions options) {
  if (sgn(alpha) <= 0 || alpha >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "optimal mechanism needs 0 < alpha < 1, got ", ToString(alpha)));
  }
  if (absl::Status s = CheckShapes(n, profile); !s.ok()) return s;
  // Profiles are validated for monotonicity on construction.

  LinearProgram lp = MechanismProgram(n, alpha, profile);
  auto solution = SolveExpectingOptimum(lp, "optimal-mechanism");
  if (!solution.ok()) return solution.status();
  const Rational loss = solution->value;

  if (options.lexicographic) {
    const int size = n + 1;
    const int d = size * size;
    std::vector<Rational> pin(d + 1);
    pin[d] = 1;
    lp.Add(std::move(pin), Relation::kEqual, loss);
    lp.objective.assign(d + 1, Rational(0));
    for (int i = 0; i < size; ++i) {
      for (int r = 0; r < size; ++r)
        lp.objective[i * size + r] = std::abs(i - r);
    }
    solution = SolveExpectingOptimum(lp, "secondary-objective");
    if (!solution.ok()) return solution.status();
  }

  auto matrix = ReshapeSquare(solution->assignment, n + 1);
  if (!matrix.ok()) return matrix.status();
  auto mechanism = Mechanism::Create(*std::move(matrix), alpha);
  if (!mechanism.ok()) return mechanism.status();
  auto achieved = MaxLoss(*mechanism, profile);
  if (!achieved.ok()) return achieved.status();
  if (*achieved != loss) {
    return absl::InternalError(absl::StrCat(
        "LP optimum ", ToString(loss), " disagrees with the mechanism's loss ",
        ToString(*achieved)));
  }
  return OptimalMechanismResult{.mechanism = *std::move(mechanism),
                                .loss = loss};
}

LinearProgram InteractionProgram(const Mechanism& deployed,
                                 const ConsumerProfile& profile) {
  const int size = deployed.size();
  const int d = size * size;
  LinearProgram lp = LinearProgram::WithVariables(d + 1);
  lp.objective[d] = 1;
  for (int i : profile.side_info()) {
    std::vector<Rational> row(d + 1);
    row[d] = 1;
    for (int r = 0; r < size; ++r) {
      const Rational& y = deployed.prob(i, r);
      if (sgn(y) == 0) continue;
      for (int s = 0; s < size; ++s) {
        row[r * size + s] -= y * profile.loss()(i, s);
      }
    }
    lp.Add(std::move(row), Relation::kGreaterEqual, 0);
  }
  for (int r = 0; r < size; ++r) {
    std::vector<Rational> row(d + 1);
    for (int s = 0; s < size; ++s) row[r * size + s] = 1;
    lp.Add(std::move(row), Relation::kEqual, 1);
  }
  return lp;
}

absl::StatusOr<OptimalInteractionResult> OptimalInteraction(
    const Mechanism& deployed, const ConsumerProfile& profile) {
  if (absl::Status s = CheckShapes(deployed.n(), profile); !s.ok()) return s;
  auto solution = SolveExpectingOptimum(InteractionProgram(deployed, profile),
                                        "interaction");
  if (!solution.ok()) return solution.status();

  auto matrix = ReshapeSquare(solution->assignment, deployed.size());
  if (!matrix.ok()) return matrix.status();
  auto post = PostProcess::Create(*std::move(matrix));
  if (!post.ok()) return post.status();
  auto induced = Apply(deployed, *post);
  if (!induced.ok()) return induced.status();
  auto achieved = MaxLoss(*induced, profile);
  if (!achieved.ok()) return achieved.status();
  if (*achieved != solution->value) {
    return absl::InternalError(
        absl::StrCat("LP optimum ", ToString(solution->value),
                     " disagrees with the induced loss ", ToString(*achieved)));
  }
  return OptimalInteractionResult{.post = *std::move(post),
                                  .induced = *std::move(induced),
                                  .loss = solution->value};
}

std::vector<RowPairPattern> RowPatternDiagnostic(const Mechanism& m,
                                                 const Rational& alpha) {
  std::vector<RowPairPattern> patterns;
  const int n = m.n();
  for (int i = 0; i < n; ++i) {
    RowPairPattern pattern{.row = i, .prefix_end = -1, .suffix_start = n + 1};
    while (pattern.prefix_end + 1 <= n &&
           alpha * m.prob(i, pattern.prefix_end + 1) ==
               m.prob(i + 1, pattern.prefix_end + 1)) {
      ++pattern.prefix_end;
    }
    while (pattern.suffix_start - 1 >= 0 &&
           m.prob(i, pattern.suffix_start - 1) ==
               alpha * m.prob(i + 1, pattern.suffix_start - 1)) {
      --pattern.suffix_start;
    }
    pattern.matches = pattern.suffix_start - pattern.prefix_end <= 2;
    patterns.push_back(pattern);
  }
  return patterns;
}

}  // namespace geomech
