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

#include "geomech/exactnum.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {

absl::StatusOr<Rational> ParseRational(std::string_view text) {
  const std::size_t slash = text.find('/');
  auto is_integer = [](std::string_view part) {
    if (!part.empty() && part.front() == '-') part.remove_prefix(1);
    if (part.empty()) return false;
    for (char c : part) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos
                                   ? std::string_view("1")
                                   : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-') {
    return absl::InvalidArgumentError(
        absl::StrCat("not a rational literal: \"", std::string(text), "\""));
  }
  Rational value;
  value.get_num().set_str(std::string(num), 10);
  value.get_den().set_str(std::string(den), 10);
  if (value.get_den() == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("zero denominator in \"", std::string(text), "\""));
  }
  value.canonicalize();
  return value;
}

std::string ToString(const Rational& value) { return value.get_str(10); }

Rational MakeRational(long num, long den) {
  Rational value(num, den);
  value.canonicalize();
  return value;
}

Rational Pow(const Rational& base, unsigned exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  // Numerator and denominator stay coprime under powering; only the sign of
  // a zero base needs care.
  result.canonicalize();
  return result;
}

RMatrix::RMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

absl::StatusOr<RMatrix> RMatrix::Create(std::size_t rows, std::size_t cols,
                                        std::vector<Rational> entries) {
  if (entries.size() != rows * cols) {
    return absl::InvalidArgumentError(
        absl::StrCat("matrix ", rows, "x", cols, " needs ", rows * cols,
                     " entries, got ", entries.size()));
  }
  return RMatrix(rows, cols, std::move(entries));
}

absl::StatusOr<RMatrix> RMatrix::FromRows(
    const std::vector<std::vector<Rational>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Rational> entries;
  entries.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("ragged matrix: row ", r, " has ", rows[r].size(),
                       " entries, expected ", cols));
    }
    entries.insert(entries.end(), rows[r].begin(), rows[r].end());
  }
  return RMatrix(rows.size(), cols, std::move(entries));
}

RMatrix RMatrix::Identity(std::size_t size) {
  std::vector<Rational> entries(size * size);
  for (std::size_t i = 0; i < size; ++i) entries[i * size + i] = 1;
  return RMatrix(size, size, std::move(entries));
}

std::vector<Rational> RMatrix::column(std::size_t c) const {
  std::vector<Rational> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

std::string RMatrix::ShapeString() const {
  return absl::StrCat(rows_, "x", cols_);
}

absl::StatusOr<RMatrix> MatMul(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot multiply ", a.ShapeString(), " by ", b.ShapeString()));
  }
  std::vector<Rational> out(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& lhs = a(i, k);
      if (sgn(lhs) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) == 0) continue;
        out[i * b.cols() + j] += lhs * b(k, j);
      }
    }
  }
  return RMatrix::Create(a.rows(), b.cols(), std::move(out));
}

absl::StatusOr<Rational> Determinant(const RMatrix& a) {
  if (!a.is_square()) {
    return absl::InvalidArgumentError(
        absl::StrCat("determinant of non-square ", a.ShapeString()));
  }
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  std::vector<std::vector<Rational>> m(n);
  for (std::size_t r = 0; r < n; ++r)
    m[r].assign(a.row(r).begin(), a.row(r).end());

  // Bareiss: after step k every entry of the trailing block equals a k+1
  // order minor, so the division by the previous pivot is exact.
  int sign = 1;
  Rational previous_pivot = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(m[swap][k]) == 0) ++swap;
      if (swap == n) return Rational(0);
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous_pivot;
      }
      m[i][k] = 0;
    }
    previous_pivot = m[k][k];
  }
  Rational det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

absl::StatusOr<RMatrix> Inverse(const RMatrix& a) {
  if (!a.is_square()) {
    return absl::InvalidArgumentError(
        absl::StrCat("inverse of non-square ", a.ShapeString()));
  }
  const std::size_t n = a.rows();
  std::vector<std::vector<Rational>> left(n), right(n);
  for (std::size_t r = 0; r < n; ++r) {
    left[r].assign(a.row(r).begin(), a.row(r).end());
    right[r].assign(n, Rational(0));
    right[r][r] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && sgn(left[pivot][k]) == 0) ++pivot;
    if (pivot == n) {
      return absl::FailedPreconditionError(
          absl::StrCat("singular ", a.ShapeString(), " matrix (det = 0)"));
    }
    std::swap(left[k], left[pivot]);
    std::swap(right[k], right[pivot]);
    const Rational scale = 1 / left[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      left[k][j] *= scale;
      right[k][j] *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(left[i][k]) == 0) continue;
      const Rational factor = left[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        left[i][j] -= factor * left[k][j];
        right[i][j] -= factor * right[k][j];
      }
    }
  }
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (auto& row : right) {
    for (auto& value : row) entries.push_back(std::move(value));
  }
  return RMatrix::Create(n, n, std::move(entries));
}

absl::StatusOr<RMatrix> ReplaceColumn(const RMatrix& a, std::size_t index,
                                      std::span<const Rational> column) {
  if (!a.is_square()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "column replacement needs a square matrix, got ", a.ShapeString()));
  }
  if (index >= a.cols()) {
    return absl::OutOfRangeError(
        absl::StrCat("column ", index, " out of range for ", a.ShapeString()));
  }
  if (column.size() != a.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("replacement column has ", column.size(),
                     " entries, matrix has ", a.rows(), " rows"));
  }
  std::vector<Rational> entries = a.entries();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    entries[r * a.cols() + index] = column[r];
  }
  return RMatrix::Create(a.rows(), a.cols(), std::move(entries));
}

RMatrix Transpose(const RMatrix& a) {
  std::vector<Rational> entries;
  entries.reserve(a.rows() * a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) entries.push_back(a(r, c));
  }
  return *RMatrix::Create(a.cols(), a.rows(), std::move(entries));
}

bool IsRowStochastic(const RMatrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Rational sum = 0;
    for (const Rational& x : a.row(r)) {
      if (sgn(x) < 0) return false;
      sum += x;
    }
    if (sum != 1) return false;
  }
  return true;
}

}  // namespace geomech
