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

#include "geomech/derivability.h"

#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {
namespace {

absl::Status CheckPreconditions(const Mechanism& m, const Rational& alpha) {
  if (sgn(alpha) <= 0 || alpha >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "derivability needs 0 < alpha < 1, got ", ToString(alpha)));
  }
  if (DpVerdict dp = CheckDp(m, alpha); !dp.ok) {
    return absl::FailedPreconditionError(absl::StrCat(
        "mechanism is not ", ToString(alpha), "-differentially private (rows ",
        dp.row, ",", dp.row + 1, " column ", dp.col, ")"));
  }
  return absl::OkStatus();
}

// Returns the factor as a PostProcess after checking that it is stochastic
// and that geometric * factor reproduces m.
absl::StatusOr<PostProcess> VerifiedWitness(const Mechanism& m,
                                            const Mechanism& geometric,
                                            RMatrix factor) {
  auto rebuilt = MatMul(geometric.matrix(), factor);
  if (!rebuilt.ok()) return rebuilt.status();
  if (!(*rebuilt == m.matrix())) {
    return absl::InternalError("witness does not reproduce the mechanism");
  }
  auto post = PostProcess::Create(std::move(factor));
  if (!post.ok()) {
    return absl::InternalError(
        absl::StrCat("witness is not stochastic: ", post.status().message()));
  }
  return post;
}

}  // namespace

absl::StatusOr<PostProcess> PostProcess::Create(RMatrix matrix) {
  if (!matrix.is_square() || matrix.rows() == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "post-processing must be square, got ", matrix.ShapeString()));
  }
  if (!IsRowStochastic(matrix)) {
    return absl::InvalidArgumentError(
        "post-processing matrix is not row-stochastic");
  }
  return PostProcess(std::move(matrix));
}

absl::StatusOr<Mechanism> Apply(const Mechanism& m, const PostProcess& post) {
  auto product = MatMul(m.matrix(), post.matrix());
  if (!product.ok()) return product.status();
  return Mechanism::Create(*std::move(product));
}

Rational TripleMargin(const Rational& x1, const Rational& x2,
                      const Rational& x3, const Rational& alpha) {
  return Rational((1 + alpha * alpha) * x2 - alpha * (x1 + x3));
}

absl::StatusOr<DerivabilityReport> CheckDerivable(const Mechanism& m,
                                                  const Rational& alpha) {
  if (absl::Status s = CheckPreconditions(m, alpha); !s.ok()) return s;
  DerivabilityReport report;
  for (int j = 0; j <= m.n(); ++j) {
    for (int i = 0; i + 2 <= m.n(); ++i) {
      Rational margin =
          TripleMargin(m.prob(i, j), m.prob(i + 1, j), m.prob(i + 2, j), alpha);
      if (sgn(margin) < 0) {
        report.violation =
            TripleViolation{.column = j, .row = i, .margin = std::move(margin)};
        return report;
      }
    }
  }
  auto geometric = GeometricRestricted(m.n(), alpha);
  if (!geometric.ok()) return geometric.status();
  auto inverse = Inverse(geometric->matrix());
  if (!inverse.ok()) return inverse.status();
  auto factor = MatMul(*inverse, m.matrix());
  if (!factor.ok()) return factor.status();
  auto witness = VerifiedWitness(m, *geometric, *std::move(factor));
  if (!witness.ok()) return witness.status();
  report.derivable = true;
  report.witness = *std::move(witness);
  return report;
}

absl::StatusOr<DerivabilityReport> CramerOracle(const Mechanism& m,
                                                const Rational& alpha) {
  if (absl::Status s = CheckPreconditions(m, alpha); !s.ok()) return s;
  auto geometric = GeometricRestricted(m.n(), alpha);
  if (!geometric.ok()) return geometric.status();
  const RMatrix& g = geometric->matrix();
  auto det_g = Determinant(g);
  if (!det_g.ok()) return det_g.status();
  if (sgn(*det_g) == 0) {
    return absl::InternalError("geometric matrix is singular");
  }

  const int size = m.size();
  std::vector<Rational> factor(size * size);
  DerivabilityReport report;
  for (int j = 0; j < size; ++j) {
    const std::vector<Rational> column = m.matrix().column(j);
    for (int i = 0; i < size; ++i) {
      auto replaced = ReplaceColumn(g, i, column);
      if (!replaced.ok()) return replaced.status();
      auto det = Determinant(*replaced);
      if (!det.ok()) return det.status();
      Rational entry = *det / *det_g;
      if (sgn(entry) < 0 && !report.violation) {
        TripleViolation violation{.column = j, .row = i, .margin = entry};
        if (i > 0 && i < size - 1) {
          violation.row = i - 1;
          violation.margin =
              TripleMargin(column[i - 1], column[i], column[i + 1], alpha);
        }
        report.violation = std::move(violation);
      }
      factor[i * size + j] = std::move(entry);
    }
  }
  if (report.violation) return report;

  auto matrix = RMatrix::Create(size, size, std::move(factor));
  if (!matrix.ok()) return matrix.status();
  auto witness = VerifiedWitness(m, *geometric, *std::move(matrix));
  if (!witness.ok()) return witness.status();
  report.derivable = true;
  report.witness = *std::move(witness);
  return report;
}

absl::StatusOr<PostProcess> AddPrivacy(int n, const Rational& alpha,
                                       const Rational& beta) {
  if (sgn(alpha) <= 0 || beta >= 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("add_privacy needs 0 < alpha <= beta < 1, got alpha = ",
                     ToString(alpha), ", beta = ", ToString(beta)));
  }
  if (alpha > beta) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot remove privacy by post-processing (alpha = ", ToString(alpha),
        " > beta = ", ToString(beta), ")"));
  }
  auto target = GeometricRestricted(n, beta);
  if (!target.ok()) return target.status();
  auto report = CheckDerivable(*target, alpha);
  if (!report.ok()) return report.status();
  if (!report->derivable) {
    return absl::InternalError(absl::StrCat("geometric(", ToString(beta),
                                            ") not derivable from geometric(",
                                            ToString(alpha), ")"));
  }
  return *std::move(report->witness);
}

}  // namespace geomech
