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

#ifndef GEOMECH_SIMPLEX_H_
#define GEOMECH_SIMPLEX_H_

#include <vector>

#include "absl/status/statusor.h"
#include "geomech/exactnum.h"

namespace geomech {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// minimize objective . v subject to the constraints. Variables with
// nonneg[j] == false are free.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<bool> nonneg;

  // All variables non-negative, zero objective.
  static LinearProgram WithVariables(int num_vars);
  void Add(std::vector<Rational> coefficients, Relation relation, Rational rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;                    // meaningful iff kOptimal
  std::vector<Rational> assignment;  // meaningful iff kOptimal
  int pivots = 0;
};

// Two-phase primal simplex on a dense rational tableau with Bland's rule
// (smallest eligible entering index, ties in the ratio test broken by the
// smallest basic index), so it terminates and is deterministic. Errors only
// on malformed programs; infeasible/unbounded are statuses.
absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp);

}  // namespace geomech

#endif  // GEOMECH_SIMPLEX_H_
