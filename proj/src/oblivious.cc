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

#include "geomech/oblivious.h"

#include <algorithm>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {

absl::StatusOr<DatabaseSpace> DatabaseSpace::Create(
    int row_domain_size, int n, std::vector<int> predicate_true_values) {
  if (row_domain_size < 1 || row_domain_size > kMaxRowDomain) {
    return absl::InvalidArgumentError(
        absl::StrCat("row domain size must be in 1..", kMaxRowDomain, ", got ",
                     row_domain_size));
  }
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  long long count = 1;
  for (int j = 0; j < n; ++j) {
    count *= row_domain_size;
    if (count > kMaxDatabases) {
      return absl::ResourceExhaustedError(absl::StrCat(
          row_domain_size, "^", n, " databases exceeds the enumeration cap of ",
          kMaxDatabases));
    }
  }
  std::sort(predicate_true_values.begin(), predicate_true_values.end());
  predicate_true_values.erase(
      std::unique(predicate_true_values.begin(), predicate_true_values.end()),
      predicate_true_values.end());
  DatabaseSpace space;
  space.row_domain_size_ = row_domain_size;
  space.n_ = n;
  space.num_databases_ = static_cast<int>(count);
  space.satisfies_.assign(row_domain_size, false);
  for (int v : predicate_true_values) {
    if (v < 0 || v >= row_domain_size) {
      return absl::InvalidArgumentError(absl::StrCat("predicate value ", v,
                                                     " outside row domain 0..",
                                                     row_domain_size - 1));
    }
    space.satisfies_[v] = true;
  }
  space.predicate_ = std::move(predicate_true_values);
  return space;
}

int DatabaseSpace::RowValue(int database, int row) const {
  for (int j = 0; j < row; ++j) database /= row_domain_size_;
  return database % row_domain_size_;
}

int DatabaseSpace::Count(int database) const {
  int count = 0;
  for (int j = 0; j < n_; ++j) {
    count += satisfies_[database % row_domain_size_];
    database /= row_domain_size_;
  }
  return count;
}

std::vector<int> DatabaseSpace::Neighbors(int database) const {
  std::vector<int> out;
  int place = 1;
  for (int j = 0; j < n_; ++j) {
    const int current = (database / place) % row_domain_size_;
    for (int v = 0; v < row_domain_size_; ++v) {
      if (v != current) out.push_back(database + (v - current) * place);
    }
    place *= row_domain_size_;
  }
  return out;
}

absl::StatusOr<DbMechanism> DbMechanism::Create(DatabaseSpace space,
                                                RMatrix matrix) {
  if (matrix.rows() != static_cast<std::size_t>(space.num_databases()) ||
      matrix.cols() != static_cast<std::size_t>(space.n() + 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("database mechanism must be ", space.num_databases(), "x",
                     space.n() + 1, ", got ", matrix.ShapeString()));
  }
  if (!IsRowStochastic(matrix)) {
    return absl::InvalidArgumentError(
        "database mechanism is not row-stochastic");
  }
  return DbMechanism(std::move(space), std::move(matrix));
}

absl::StatusOr<DbMechanism> DbMechanism::Lift(DatabaseSpace space,
                                              const Mechanism& m) {
  if (m.n() != space.n()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mechanism has n = ", m.n(), ", database space has n = ", space.n()));
  }
  std::vector<Rational> entries;
  entries.reserve(space.num_databases() * m.size());
  for (int d = 0; d < space.num_databases(); ++d) {
    const auto row = m.row(space.Count(d));
    entries.insert(entries.end(), row.begin(), row.end());
  }
  auto matrix =
      RMatrix::Create(space.num_databases(), m.size(), std::move(entries));
  if (!matrix.ok()) return matrix.status();
  return Create(std::move(space), *std::move(matrix));
}

absl::StatusOr<Mechanism> Obliviousify(const DbMechanism& m) {
  const DatabaseSpace& space = m.space();
  const int size = space.n() + 1;
  std::vector<Rational> sums(size * size);
  std::vector<int> members(size, 0);
  for (int d = 0; d < space.num_databases(); ++d) {
    const int i = space.Count(d);
    ++members[i];
    for (int r = 0; r < size; ++r) sums[i * size + r] += m.matrix()(d, r);
  }
  for (int i = 0; i < size; ++i) {
    if (members[i] == 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("no database has count ", i, " under the predicate"));
    }
    for (int r = 0; r < size; ++r) sums[i * size + r] /= members[i];
  }
  auto matrix = RMatrix::Create(size, size, std::move(sums));
  if (!matrix.ok()) return matrix.status();
  return Mechanism::Create(*std::move(matrix));
}

DbDpVerdict CheckDbDp(const DbMechanism& m, const Rational& alpha) {
  const DatabaseSpace& space = m.space();
  const RMatrix& x = m.matrix();
  for (int d = 0; d < space.num_databases(); ++d) {
    for (int neighbor : space.Neighbors(d)) {
      for (std::size_t r = 0; r < x.cols(); ++r) {
        if (x(neighbor, r) >= alpha * x(d, r)) continue;
        return DbDpVerdict{.ok = false,
                           .database = d,
                           .neighbor = neighbor,
                           .col = static_cast<int>(r)};
      }
    }
  }
  return DbDpVerdict{};
}

absl::StatusOr<ReductionReport> ReductionAudit(const DbMechanism& m,
                                               const Rational& alpha,
                                               const ConsumerProfile& profile) {
  if (profile.n() != m.space().n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("profile has n = ", profile.n(),
                     ", database space has n = ", m.space().n()));
  }
  if (DbDpVerdict dp = CheckDbDp(m, alpha); !dp.ok) {
    return absl::FailedPreconditionError(
        absl::StrCat("database mechanism is not ", ToString(alpha),
                     "-differentially private (databases ", dp.database, ", ",
                     dp.neighbor, ", output ", dp.col, ")"));
  }
  auto oblivious = Obliviousify(m);
  if (!oblivious.ok()) return oblivious.status();
  auto oblivious_loss = MaxLoss(*oblivious, profile);
  if (!oblivious_loss.ok()) return oblivious_loss.status();

  const DatabaseSpace& space = m.space();
  const std::vector<int>& side = profile.side_info();
  std::optional<Rational> worst;
  for (int d = 0; d < space.num_databases(); ++d) {
    const int i = space.Count(d);
    if (!std::binary_search(side.begin(), side.end(), i)) continue;
    Rational expected = 0;
    for (int r = 0; r <= space.n(); ++r) {
      expected += m.matrix()(d, r) * profile.loss()(i, r);
    }
    if (!worst || expected > *worst) worst = std::move(expected);
  }

  ReductionReport report{.oblivious = *oblivious,
                         .oblivious_dp = CheckDp(*oblivious, alpha).ok,
                         .oblivious_loss = *oblivious_loss,
                         .database_loss = *worst};
  report.loss_dominated = report.oblivious_loss <= report.database_loss;
  report.strict = report.oblivious_loss < report.database_loss;
  return report;
}

}  // namespace geomech
