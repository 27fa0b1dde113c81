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

#ifndef GEOMECH_OPTIMIZER_H_
#define GEOMECH_OPTIMIZER_H_

#include <vector>

#include "absl/status/statusor.h"
#include "geomech/derivability.h"
#include "geomech/exactnum.h"
#include "geomech/mechanism.h"
#include "geomech/simplex.h"

namespace geomech {

struct OptimalMechanismResult {
  Mechanism mechanism;
  Rational loss;
};

struct OptimalInteractionResult {
  PostProcess post;
  Mechanism induced;
  Rational loss;
};

struct OptimizeOptions {
  // After the minimax optimum d* is found, re-solve with d fixed at d* and
  // minimize sum_{i,r} x[i][r] |i - r| to pick a canonical optimum.
  bool lexicographic = false;
};

// The minimax LP over alpha-DP mechanisms. Variables are x[i][r] in
// row-major order followed by the epigraph variable d; the program is
//   minimize d
//   d - sum_r l(i,r) x[i][r] >= 0           for i in S
//   x[i][r] - alpha x[i+1][r] >= 0           for i < n, all r
//   x[i+1][r] - alpha x[i][r] >= 0           for i < n, all r
//   sum_r x[i][r] = 1                        for all i
//   x >= 0.
LinearProgram MechanismProgram(int n, const Rational& alpha,
                               const ConsumerProfile& profile);

// Requires 0 < alpha < 1 and profile.n() == n.
absl::StatusOr<OptimalMechanismResult> OptimalMechanism(
    int n, const Rational& alpha, const ConsumerProfile& profile,
    OptimizeOptions options = {});

// Variables T[r][r'] row-major then d; constraints
//   d - sum_{r'} l(i,r') sum_r y[i][r] T[r][r'] >= 0   for i in S
//   sum_{r'} T[r][r'] = 1                               for all r.
LinearProgram InteractionProgram(const Mechanism& deployed,
                                 const ConsumerProfile& profile);

absl::StatusOr<OptimalInteractionResult> OptimalInteraction(
    const Mechanism& deployed, const ConsumerProfile& profile);

struct RowPairPattern {
  int row = 0;  // pair (row, row + 1)
  // Last column of the maximal prefix with alpha x[i][j] == x[i+1][j];
  // -1 when empty.
  int prefix_end = -1;
  // First column of the maximal suffix with x[i][j] == alpha x[i+1][j];
  // n + 1 when empty.
  int suffix_start = 0;
  // suffix_start - prefix_end <= 2.
  bool matches = false;
};

// Reports, for each adjacent row pair, how closely the mechanism follows the
// "tight on the left, tight on the right, at most one free column between"
// shape. Diagnostic only.
std::vector<RowPairPattern> RowPatternDiagnostic(const Mechanism& m,
                                                 const Rational& alpha);

}  // namespace geomech

#endif  // GEOMECH_OPTIMIZER_H_
