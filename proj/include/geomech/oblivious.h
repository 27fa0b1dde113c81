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

#ifndef GEOMECH_OBLIVIOUS_H_
#define GEOMECH_OBLIVIOUS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "geomech/exactnum.h"
#include "geomech/mechanism.h"

namespace geomech {

inline constexpr int kMaxRowDomain = 3;
inline constexpr int kMaxDatabases = 4096;

// All databases of n rows over the row domain {0..row_domain_size-1}.
// Database d is identified with the base-|D| number whose digit j is row j.
class DatabaseSpace {
 public:
  static absl::StatusOr<DatabaseSpace> Create(
      int row_domain_size, int n, std::vector<int> predicate_true_values);

  int row_domain_size() const { return row_domain_size_; }
  int n() const { return n_; }
  const std::vector<int>& predicate_true_values() const { return predicate_; }
  int num_databases() const { return num_databases_; }

  int RowValue(int database, int row) const;
  // Number of rows satisfying the predicate.
  int Count(int database) const;
  // Databases differing from `database` in exactly one row.
  std::vector<int> Neighbors(int database) const;

 private:
  DatabaseSpace() = default;

  int row_domain_size_ = 0;
  int n_ = 0;
  int num_databases_ = 0;
  std::vector<int> predicate_;
  std::vector<bool> satisfies_;
};

// Database-indexed mechanism: one output distribution over {0..n} per
// database.
class DbMechanism {
 public:
  static absl::StatusOr<DbMechanism> Create(DatabaseSpace space,
                                            RMatrix matrix);
  // Row d is row Count(d) of `m`.
  static absl::StatusOr<DbMechanism> Lift(DatabaseSpace space,
                                          const Mechanism& m);

  const DatabaseSpace& space() const { return space_; }
  const RMatrix& matrix() const { return matrix_; }

 private:
  DbMechanism(DatabaseSpace space, RMatrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {}

  DatabaseSpace space_;
  RMatrix matrix_;
};

// Row i is the average of the rows of all databases with count i. Fails if
// some count in 0..n is unreachable under the predicate.
absl::StatusOr<Mechanism> Obliviousify(const DbMechanism& m);

struct DbDpVerdict {
  bool ok = true;
  int database = -1;
  int neighbor = -1;
  int col = -1;
};

// Ratio bound alpha x[d1][r] <= x[d2][r] over every ordered neighbor pair.
DbDpVerdict CheckDbDp(const DbMechanism& m, const Rational& alpha);

struct ReductionReport {
  Mechanism oblivious;
  bool oblivious_dp = false;
  // max over i in S of the averaged mechanism's expected loss.
  Rational oblivious_loss;
  // max over databases d with Count(d) in S of sum_r x[d][r] l(Count(d), r).
  Rational database_loss;
  bool loss_dominated = false;  // oblivious_loss <= database_loss
  bool strict = false;          // oblivious_loss < database_loss
};

// Requires CheckDbDp(m, alpha).ok and profile.n() == space n.
absl::StatusOr<ReductionReport> ReductionAudit(const DbMechanism& m,
                                               const Rational& alpha,
                                               const ConsumerProfile& profile);

}  // namespace geomech

#endif  // GEOMECH_OBLIVIOUS_H_
