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

#include <cstddef>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {
namespace {

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs,
          std::vector<int> basis, std::vector<bool> enterable)
      : rows_(std::move(rows)),
        rhs_(std::move(rhs)),
        basis_(std::move(basis)),
        enterable_(std::move(enterable)) {}

  // Installs a cost vector and prices out the current basis.
  void SetCost(const std::vector<Rational>& cost) {
    reduced_ = cost;
    neg_value_ = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < reduced_.size(); ++j) {
        if (sgn(rows_[i][j]) != 0) reduced_[j] -= cb * rows_[i][j];
      }
      neg_value_ -= cb * rhs_[i];
    }
  }

  enum class Outcome { kOptimal, kUnbounded };

  Outcome Run() {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < reduced_.size(); ++j) {
        if (enterable_[j] && sgn(reduced_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return Outcome::kOptimal;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = rhs_[i] / a;
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return Outcome::kUnbounded;
      Pivot(*leaving, *entering);
    }
  }

  void Pivot(std::size_t p, std::size_t q) {
    ++pivots_;
    std::vector<Rational>& pivot_row = rows_[p];
    const Rational scale = 1 / pivot_row[q];
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < pivot_row.size(); ++j) {
      if (sgn(pivot_row[j]) == 0) continue;
      pivot_row[j] *= scale;
      support.push_back(j);
    }
    rhs_[p] *= scale;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == p || sgn(rows_[i][q]) == 0) continue;
      const Rational factor = rows_[i][q];
      for (std::size_t j : support) rows_[i][j] -= factor * pivot_row[j];
      rhs_[i] -= factor * rhs_[p];
    }
    if (sgn(reduced_[q]) != 0) {
      const Rational factor = reduced_[q];
      for (std::size_t j : support) reduced_[j] -= factor * pivot_row[j];
      neg_value_ -= factor * rhs_[p];
    }
    basis_[p] = static_cast<int>(q);
  }

  // Pivots artificial columns (index >= first_artificial) out of the basis
  // after phase one, dropping rows that turn out to be redundant.
  void DriveOutArtificials(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows_.size();) {
      if (static_cast<std::size_t>(basis_[i]) < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> column;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(rows_[i][j]) != 0) {
          column = j;
          break;
        }
      }
      if (column) {
        Pivot(i, *column);
        ++i;
      } else {
        rows_.erase(rows_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
    for (std::size_t j = first_artificial; j < enterable_.size(); ++j) {
      enterable_[j] = false;
    }
  }

  Rational value() const { return -neg_value_; }
  int pivots() const { return pivots_; }

  std::vector<Rational> ColumnValues(std::size_t num_columns) const {
    std::vector<Rational> values(num_columns);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      values[basis_[i]] = rhs_[i];
    }
    return values;
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<bool> enterable_;
  std::vector<Rational> reduced_;
  Rational neg_value_;
  int pivots_ = 0;
};

absl::Status Validate(const LinearProgram& lp) {
  if (lp.num_vars < 0) return absl::InvalidArgumentError("negative num_vars");
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n || lp.nonneg.size() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("objective/nonneg sizes (", lp.objective.size(), ", ",
                     lp.nonneg.size(), ") do not match num_vars ", n));
  }
  for (std::size_t c = 0; c < lp.constraints.size(); ++c) {
    if (lp.constraints[c].coefficients.size() != n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "constraint ", c, " has ", lp.constraints[c].coefficients.size(),
          " coefficients, expected ", n));
    }
  }
  return absl::OkStatus();
}

}  // namespace

LinearProgram LinearProgram::WithVariables(int num_vars) {
  LinearProgram lp;
  lp.num_vars = num_vars;
  lp.objective.assign(num_vars, Rational(0));
  lp.nonneg.assign(num_vars, true);
  return lp;
}

void LinearProgram::Add(std::vector<Rational> coefficients, Relation relation,
                        Rational rhs) {
  constraints.push_back(Constraint{.coefficients = std::move(coefficients),
                                   .relation = relation,
                                   .rhs = std::move(rhs)});
}

absl::StatusOr<LpSolution> SolveLp(const LinearProgram& lp) {
  if (absl::Status s = Validate(lp); !s.ok()) return s;

  // Column layout: one column per variable, a mirrored column for each free
  // variable, one slack per inequality, then artificials.
  std::vector<std::size_t> negative_part(lp.num_vars, 0);
  std::size_t columns = lp.num_vars;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (!lp.nonneg[j]) negative_part[j] = columns++;
  }
  const std::size_t first_slack = columns;
  for (const Constraint& c : lp.constraints) {
    if (c.relation != Relation::kEqual) ++columns;
  }
  const std::size_t first_artificial = columns;

  const std::size_t m = lp.constraints.size();
  std::vector<std::vector<Rational>> rows(m);
  std::vector<Rational> rhs(m);
  std::vector<int> basis(m, -1);
  std::size_t next_slack = first_slack;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& c = lp.constraints[i];
    std::vector<Rational>& row = rows[i];
    row.assign(first_artificial, Rational(0));
    for (int j = 0; j < lp.num_vars; ++j) {
      row[j] = c.coefficients[j];
      if (!lp.nonneg[j]) row[negative_part[j]] = -c.coefficients[j];
    }
    std::optional<std::size_t> slack;
    if (c.relation != Relation::kEqual) {
      slack = next_slack++;
      row[*slack] = c.relation == Relation::kLessEqual ? 1 : -1;
    }
    rhs[i] = c.rhs;
    // Keep rhs >= 0; a ">= 0" row is flipped too so its slack can start in
    // the basis.
    if (sgn(rhs[i]) < 0 ||
        (sgn(rhs[i]) == 0 && c.relation == Relation::kGreaterEqual)) {
      for (Rational& a : row) a = -a;
      rhs[i] = -rhs[i];
    }
    if (slack && sgn(row[*slack]) > 0) {
      basis[i] = static_cast<int>(*slack);
    } else {
      ++artificials;
    }
  }
  const std::size_t total = first_artificial + artificials;
  std::size_t next_artificial = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    rows[i].resize(total);
    if (basis[i] < 0) {
      rows[i][next_artificial] = 1;
      basis[i] = static_cast<int>(next_artificial++);
    }
  }

  Tableau tableau(std::move(rows), std::move(rhs), std::move(basis),
                  std::vector<bool>(total, true));
  LpSolution solution;
  if (artificials > 0) {
    std::vector<Rational> phase_one(total);
    for (std::size_t j = first_artificial; j < total; ++j) phase_one[j] = 1;
    tableau.SetCost(phase_one);
    tableau.Run();
    if (sgn(tableau.value()) > 0) {
      solution.status = LpStatus::kInfeasible;
      solution.pivots = tableau.pivots();
      return solution;
    }
    tableau.DriveOutArtificials(first_artificial);
  }

  std::vector<Rational> cost(total);
  for (int j = 0; j < lp.num_vars; ++j) {
    cost[j] = lp.objective[j];
    if (!lp.nonneg[j]) cost[negative_part[j]] = -lp.objective[j];
  }
  tableau.SetCost(cost);
  const Tableau::Outcome outcome = tableau.Run();
  solution.pivots = tableau.pivots();
  if (outcome == Tableau::Outcome::kUnbounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }
  const std::vector<Rational> values = tableau.ColumnValues(total);
  solution.assignment.resize(lp.num_vars);
  for (int j = 0; j < lp.num_vars; ++j) {
    solution.assignment[j] = values[j];
    if (!lp.nonneg[j]) solution.assignment[j] -= values[negative_part[j]];
  }
  solution.status = LpStatus::kOptimal;
  solution.value = tableau.value();
  return solution;
}

}  // namespace geomech
