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

#ifndef GEOMECH_EXACTNUM_H_
#define GEOMECH_EXACTNUM_H_

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace geomech {

// Exact fraction in canonical form (positive denominator, reduced). Every
// probability, privacy parameter and loss value in the library is one of
// these.
using Rational = mpq_class;

// Accepts "p/q" or the integer shorthand "p". Rejects zero denominators and
// anything GMP would not parse as a base-10 rational.
absl::StatusOr<Rational> ParseRational(std::string_view text);

// Canonical "p/q", or "p" when the denominator is 1.
std::string ToString(const Rational& value);

// num/den in canonical form; den must be nonzero.
Rational MakeRational(long num, long den);

// Integer power with 0^0 = 1.
Rational Pow(const Rational& base, unsigned exponent);

// Dense row-major matrix of Rationals. Values are immutable once built;
// every operation below returns a fresh matrix.
class RMatrix {
 public:
  RMatrix() = default;

  // Zero matrix.
  RMatrix(std::size_t rows, std::size_t cols);

  // Takes ownership of row-major `entries`; fails unless
  // entries.size() == rows * cols.
  static absl::StatusOr<RMatrix> Create(std::size_t rows, std::size_t cols,
                                        std::vector<Rational> entries);
  // Fails on ragged input.
  static absl::StatusOr<RMatrix> FromRows(
      const std::vector<std::vector<Rational>>& rows);
  static RMatrix Identity(std::size_t size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::vector<Rational> column(std::size_t c) const;
  const std::vector<Rational>& entries() const { return entries_; }

  // "RxC", used in error messages.
  std::string ShapeString() const;

  friend bool operator==(const RMatrix& a, const RMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  RMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {}

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

absl::StatusOr<RMatrix> MatMul(const RMatrix& a, const RMatrix& b);

// Fraction-free (Bareiss) elimination with row pivoting.
absl::StatusOr<Rational> Determinant(const RMatrix& a);

// Gauss-Jordan over the rationals. A singular input yields
// FailedPrecondition whose message carries "det = 0".
absl::StatusOr<RMatrix> Inverse(const RMatrix& a);

// Copy of square `a` with column `index` replaced by `column`.
absl::StatusOr<RMatrix> ReplaceColumn(const RMatrix& a, std::size_t index,
                                      std::span<const Rational> column);

RMatrix Transpose(const RMatrix& a);

// Every entry >= 0 and every row sums to exactly 1.
bool IsRowStochastic(const RMatrix& a);

}  // namespace geomech

#endif  // GEOMECH_EXACTNUM_H_
