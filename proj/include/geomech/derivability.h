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

#ifndef GEOMECH_DERIVABILITY_H_
#define GEOMECH_DERIVABILITY_H_

#include <optional>

#include "absl/status/statusor.h"
#include "geomech/exactnum.h"
#include "geomech/mechanism.h"

namespace geomech {

// Row-stochastic reinterpretation matrix: entry (r, r') is the probability
// that a released r is read as r'.
class PostProcess {
 public:
  static absl::StatusOr<PostProcess> Create(RMatrix matrix);

  int size() const { return static_cast<int>(matrix_.rows()); }
  const RMatrix& matrix() const { return matrix_; }

  friend bool operator==(const PostProcess& a, const PostProcess& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  explicit PostProcess(RMatrix matrix) : matrix_(std::move(matrix)) {}

  RMatrix matrix_;
};

// Mechanism induced by reading `m`'s outputs through `post`.
absl::StatusOr<Mechanism> Apply(const Mechanism& m, const PostProcess& post);

struct TripleViolation {
  int column = -1;
  // First row of the offending triple (rows row, row+1, row+2).
  int row = -1;
  Rational margin;
};

struct DerivabilityReport {
  bool derivable = false;
  // Set iff derivable: geometric * witness reproduces the mechanism.
  std::optional<PostProcess> witness;
  // Set iff not derivable.
  std::optional<TripleViolation> violation;
};

// (1 + a^2) x2 - a (x1 + x3). Non-negative on every consecutive column
// triple exactly when a DP mechanism factors through the geometric one.
Rational TripleMargin(const Rational& x1, const Rational& x2,
                      const Rational& x3, const Rational& alpha);

// Decides derivability from GeometricRestricted(n, alpha) with the triple
// test and, when derivable, returns G^-1 * m as the witness. Requires
// 0 < alpha < 1 and an alpha-DP input.
absl::StatusOr<DerivabilityReport> CheckDerivable(const Mechanism& m,
                                                  const Rational& alpha);

// Independent route to the same verdict: every entry of the factor is
// computed by Cramer's rule as det(G with column i replaced by m_j) / det(G)
// and the mechanism is derivable iff none is negative. The violation, when
// present, reports the first negative (row i, column j) of the factor with
// the triple margin recomputed around that row.
absl::StatusOr<DerivabilityReport> CramerOracle(const Mechanism& m,
                                                const Rational& alpha);

// T with GeometricRestricted(n, alpha) * T = GeometricRestricted(n, beta).
// Needs 0 < alpha <= beta < 1.
absl::StatusOr<PostProcess> AddPrivacy(int n, const Rational& alpha,
                                       const Rational& beta);

}  // namespace geomech

#endif  // GEOMECH_DERIVABILITY_H_
