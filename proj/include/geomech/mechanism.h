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

#ifndef GEOMECH_MECHANISM_H_
#define GEOMECH_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "geomech/exactnum.h"

namespace geomech {

// Oblivious mechanism for a count query with results {0..n}: entry (i, r) is
// the probability of releasing r when the true result is i.
class Mechanism {
 public:
  // Validates shape (square, at least 2x2) and row-stochasticity.
  // `alpha_claimed` is carried along as an annotation and never trusted.
  static absl::StatusOr<Mechanism> Create(
      RMatrix matrix, std::optional<Rational> alpha_claimed = std::nullopt);

  int n() const { return static_cast<int>(matrix_.rows()) - 1; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  const RMatrix& matrix() const { return matrix_; }
  const std::optional<Rational>& alpha_claimed() const {
    return alpha_claimed_;
  }
  const Rational& prob(int i, int r) const { return matrix_(i, r); }
  std::span<const Rational> row(int i) const { return matrix_.row(i); }

  friend bool operator==(const Mechanism& a, const Mechanism& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  Mechanism(RMatrix matrix, std::optional<Rational> alpha_claimed)
      : matrix_(std::move(matrix)), alpha_claimed_(std::move(alpha_claimed)) {}

  RMatrix matrix_;
  std::optional<Rational> alpha_claimed_;
};

enum class LossKind { kAbs, kSquare, kZeroOne };

// "abs", "square", "zero_one".
absl::StatusOr<LossKind> ParseLossKind(std::string_view name);
std::string_view LossKindName(LossKind kind);

// (n+1)x(n+1) loss matrix l(i, r) for a built-in loss.
RMatrix MakeLoss(LossKind kind, int n);

// Loss matrix plus the side information S (results the consumer knows are
// possible). The loss must be non-decreasing in |i - r| on both sides of i.
class ConsumerProfile {
 public:
  static absl::StatusOr<ConsumerProfile> Create(RMatrix loss,
                                                std::vector<int> side_info);
  static absl::StatusOr<ConsumerProfile> Create(LossKind kind, int n,
                                                std::vector<int> side_info);

  int n() const { return static_cast<int>(loss_.rows()) - 1; }
  const RMatrix& loss() const { return loss_; }
  // Sorted, unique, nonempty.
  const std::vector<int>& side_info() const { return side_info_; }

 private:
  ConsumerProfile(RMatrix loss, std::vector<int> side_info)
      : loss_(std::move(loss)), side_info_(std::move(side_info)) {}

  RMatrix loss_;
  std::vector<int> side_info_;
};

// Ok unless the matrix has a negative entry or breaks monotonicity; the
// error names the offending (i, r, r') triple.
absl::Status CheckMonotoneLoss(const RMatrix& loss);

// Pr[Z = z] for the two-sided geometric distribution, (1-a)/(1+a) * a^|z|.
// Requires 0 < alpha < 1.
absl::StatusOr<Rational> GeometricFullPmf(const Rational& alpha, int64_t z);

// Two-sided geometric noise with out-of-range mass folded onto 0 and n.
// alpha = 0 gives the identity; alpha = 1 puts 1/2 on each end.
absl::StatusOr<Mechanism> GeometricRestricted(int n, const Rational& alpha);

struct DpVerdict {
  bool ok = true;
  // First violation in row-major scan order over (i, r), i in 0..n-1.
  int row = -1;
  int col = -1;
  Rational x_row;   // x[i][r]
  Rational x_next;  // x[i+1][r]
  // x[i+1][r] / x[i][r] and its reciprocal; nullopt where the denominator
  // is zero.
  std::optional<Rational> ratio_next_over_row;
  std::optional<Rational> ratio_row_over_next;
};

// Exact check of x[i+1][r] >= alpha x[i][r] and x[i][r] >= alpha x[i+1][r].
DpVerdict CheckDp(const Mechanism& m, const Rational& alpha);

// mt19937_64 stream whose draws are read as the rational u / 2^64.
class SeededStream {
 public:
  explicit SeededStream(uint64_t seed) : engine_(seed) {}

  // Inverse-CDF draw from `distribution`, scanning columns left to right and
  // returning the first index whose cumulative mass exceeds u / 2^64.
  int Draw(std::span<const Rational> distribution);

 private:
  std::mt19937_64 engine_;
};

// Index selected by the uniform u / 2^64 under the inverse CDF of
// `distribution`. Exposed for replay tooling and tests.
int InverseCdf(std::span<const Rational> distribution, uint64_t u);

struct SampleTrace {
  uint64_t seed = 0;
  int true_result = 0;
  int output = 0;
};

// First draw of SeededStream(seed) against row `true_result`.
absl::StatusOr<SampleTrace> Sample(const Mechanism& m, int true_result,
                                   uint64_t seed);

// max over i in S of sum_r l(i, r) x[i][r].
absl::StatusOr<Rational> MaxLoss(const Mechanism& m,
                                 const ConsumerProfile& profile);

}  // namespace geomech

#endif  // GEOMECH_MECHANISM_H_
