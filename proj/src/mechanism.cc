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

#include "geomech/mechanism.h"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {
namespace {

const mpz_class& TwoToThe64() {
  static const mpz_class value = mpz_class(1) << 64;
  return value;
}

}  // namespace

absl::StatusOr<Mechanism> Mechanism::Create(
    RMatrix matrix, std::optional<Rational> alpha_claimed) {
  if (!matrix.is_square() || matrix.rows() < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("mechanism must be (n+1)x(n+1) with n >= 1, got ",
                     matrix.ShapeString()));
  }
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    Rational sum = 0;
    for (std::size_t r = 0; r < matrix.cols(); ++r) {
      if (sgn(matrix(i, r)) < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("negative probability ", ToString(matrix(i, r)),
                         " at (", i, ",", r, ")"));
      }
      sum += matrix(i, r);
    }
    if (sum != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " sums to ", ToString(sum), ", not 1"));
    }
  }
  return Mechanism(std::move(matrix), std::move(alpha_claimed));
}

absl::StatusOr<LossKind> ParseLossKind(std::string_view name) {
  if (name == "abs") return LossKind::kAbs;
  if (name == "square") return LossKind::kSquare;
  if (name == "zero_one") return LossKind::kZeroOne;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown loss \"", std::string(name),
                   "\" (expected abs, square or zero_one)"));
}

std::string_view LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kAbs:
      return "abs";
    case LossKind::kSquare:
      return "square";
    case LossKind::kZeroOne:
      return "zero_one";
  }
  return "";
}

RMatrix MakeLoss(LossKind kind, int n) {
  std::vector<Rational> entries;
  entries.reserve((n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i) {
    for (int r = 0; r <= n; ++r) {
      const int d = std::abs(i - r);
      switch (kind) {
        case LossKind::kAbs:
          entries.emplace_back(d);
          break;
        case LossKind::kSquare:
          entries.emplace_back(d * d);
          break;
        case LossKind::kZeroOne:
          entries.emplace_back(d == 0 ? 0 : 1);
          break;
      }
    }
  }
  return *RMatrix::Create(n + 1, n + 1, std::move(entries));
}

absl::Status CheckMonotoneLoss(const RMatrix& loss) {
  for (std::size_t i = 0; i < loss.rows(); ++i) {
    for (std::size_t r = 0; r < loss.cols(); ++r) {
      if (sgn(loss(i, r)) < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("loss l(", i, ",", r, ") = ", ToString(loss(i, r)),
                         " is negative"));
      }
    }
    // Walking outward from the diagonal, each step must not decrease.
    for (std::size_t r = i + 1; r < loss.cols(); ++r) {
      if (loss(i, r) < loss(i, r - 1)) {
        return absl::InvalidArgumentError(
            absl::StrCat("loss not monotone in |i-r|: l(", i, ",", r - 1,
                         ") = ", ToString(loss(i, r - 1)), " > l(", i, ",", r,
                         ") = ", ToString(loss(i, r))));
      }
    }
    for (std::size_t r = i; r-- > 0;) {
      if (loss(i, r) < loss(i, r + 1)) {
        return absl::InvalidArgumentError(
            absl::StrCat("loss not monotone in |i-r|: l(", i, ",", r + 1,
                         ") = ", ToString(loss(i, r + 1)), " > l(", i, ",", r,
                         ") = ", ToString(loss(i, r))));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ConsumerProfile> ConsumerProfile::Create(
    RMatrix loss, std::vector<int> side_info) {
  if (!loss.is_square() || loss.rows() < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "loss must be (n+1)x(n+1) with n >= 1, got ", loss.ShapeString()));
  }
  if (absl::Status s = CheckMonotoneLoss(loss); !s.ok()) return s;
  std::sort(side_info.begin(), side_info.end());
  side_info.erase(std::unique(side_info.begin(), side_info.end()),
                  side_info.end());
  if (side_info.empty()) {
    return absl::InvalidArgumentError("side information set is empty");
  }
  const int n = static_cast<int>(loss.rows()) - 1;
  if (side_info.front() < 0 || side_info.back() > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("side information must lie in 0..", n));
  }
  return ConsumerProfile(std::move(loss), std::move(side_info));
}

absl::StatusOr<ConsumerProfile> ConsumerProfile::Create(
    LossKind kind, int n, std::vector<int> side_info) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  return Create(MakeLoss(kind, n), std::move(side_info));
}

absl::StatusOr<Rational> GeometricFullPmf(const Rational& alpha, int64_t z) {
  if (sgn(alpha) <= 0 || alpha >= 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "two-sided geometric needs 0 < alpha < 1, got ", ToString(alpha)));
  }
  const uint64_t magnitude = z < 0 ? -static_cast<uint64_t>(z) : z;
  return Rational((1 - alpha) / (1 + alpha)) * Pow(alpha, magnitude);
}

absl::StatusOr<Mechanism> GeometricRestricted(int n, const Rational& alpha) {
  if (n < 1) {
    return absl::InvalidArgumentError(absl::StrCat("n must be >= 1, got ", n));
  }
  if (sgn(alpha) < 0 || alpha > 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0,1], got ", ToString(alpha)));
  }
  std::vector<Rational> entries;
  entries.reserve((n + 1) * (n + 1));
  if (alpha == 1) {
    for (int i = 0; i <= n; ++i) {
      for (int r = 0; r <= n; ++r) {
        entries.emplace_back(r == 0 || r == n ? MakeRational(1, 2)
                                              : Rational(0));
      }
    }
  } else {
    const Rational end_scale = 1 / (1 + alpha);
    const Rational mid_scale = (1 - alpha) / (1 + alpha);
    for (int i = 0; i <= n; ++i) {
      for (int r = 0; r <= n; ++r) {
        const Rational& scale = (r == 0 || r == n) ? end_scale : mid_scale;
        entries.push_back(scale * Pow(alpha, std::abs(r - i)));
      }
    }
  }
  auto matrix = RMatrix::Create(n + 1, n + 1, std::move(entries));
  if (!matrix.ok()) return matrix.status();
  return Mechanism::Create(*std::move(matrix), alpha);
}

DpVerdict CheckDp(const Mechanism& m, const Rational& alpha) {
  DpVerdict verdict;
  for (int i = 0; i < m.n(); ++i) {
    for (int r = 0; r <= m.n(); ++r) {
      const Rational& here = m.prob(i, r);
      const Rational& next = m.prob(i + 1, r);
      if (next >= alpha * here && here >= alpha * next) continue;
      verdict.ok = false;
      verdict.row = i;
      verdict.col = r;
      verdict.x_row = here;
      verdict.x_next = next;
      if (sgn(here) != 0) verdict.ratio_next_over_row = next / here;
      if (sgn(next) != 0) verdict.ratio_row_over_next = here / next;
      return verdict;
    }
  }
  return verdict;
}

int InverseCdf(std::span<const Rational> distribution, uint64_t u) {
  Rational point(mpz_class(static_cast<unsigned long>(u)), TwoToThe64());
  point.canonicalize();
  Rational cumulative = 0;
  int last_positive = 0;
  for (std::size_t r = 0; r < distribution.size(); ++r) {
    if (sgn(distribution[r]) == 0) continue;
    last_positive = static_cast<int>(r);
    cumulative += distribution[r];
    if (point < cumulative) return last_positive;
  }
  // Only reachable when the row sums to less than 1.
  return last_positive;
}

int SeededStream::Draw(std::span<const Rational> distribution) {
  return InverseCdf(distribution, engine_());
}

absl::StatusOr<SampleTrace> Sample(const Mechanism& m, int true_result,
                                   uint64_t seed) {
  if (true_result < 0 || true_result > m.n()) {
    return absl::OutOfRangeError(
        absl::StrCat("true result ", true_result, " outside 0..", m.n()));
  }
  SeededStream stream(seed);
  return SampleTrace{.seed = seed,
                     .true_result = true_result,
                     .output = stream.Draw(m.row(true_result))};
}

absl::StatusOr<Rational> MaxLoss(const Mechanism& m,
                                 const ConsumerProfile& profile) {
  if (profile.n() != m.n()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mechanism has n = ", m.n(), " but profile has n = ", profile.n()));
  }
  std::optional<Rational> worst;
  for (int i : profile.side_info()) {
    Rational expected = 0;
    for (int r = 0; r <= m.n(); ++r) {
      expected += profile.loss()(i, r) * m.prob(i, r);
    }
    if (!worst || expected > *worst) worst = expected;
  }
  return *worst;
}

}  // namespace geomech
