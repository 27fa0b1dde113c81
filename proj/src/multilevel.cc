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

#include "geomech/multilevel.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {
namespace {

std::size_t IntPow(std::size_t base, int exponent) {
  std::size_t result = 1;
  for (int e = 0; e < exponent; ++e) result *= base;
  return result;
}

// Marginal of `table` onto the levels whose bits are set in `mask`.
std::vector<Rational> Marginal(const JointTable& table, unsigned mask) {
  const std::size_t radix = table.n + 1;
  int width = 0;
  for (int l = 0; l < table.levels; ++l) width += (mask >> l) & 1;
  std::vector<Rational> out(IntPow(radix, width));
  for (std::size_t index = 0; index < table.probabilities.size(); ++index) {
    if (sgn(table.probabilities[index]) == 0) continue;
    // Decode with r_1 most significant, re-encode the kept digits.
    std::size_t rest = index;
    std::vector<std::size_t> digits(table.levels);
    for (int l = table.levels - 1; l >= 0; --l) {
      digits[l] = rest % radix;
      rest /= radix;
    }
    std::size_t projected = 0;
    for (int l = 0; l < table.levels; ++l) {
      if ((mask >> l) & 1) projected = projected * radix + digits[l];
    }
    out[projected] += table.probabilities[index];
  }
  return out;
}

std::vector<int> DecodeOutcome(std::size_t index, std::size_t radix,
                               int width) {
  std::vector<int> digits(width);
  for (int l = width - 1; l >= 0; --l) {
    digits[l] = static_cast<int>(index % radix);
    index /= radix;
  }
  return digits;
}

}  // namespace

absl::StatusOr<ReleaseLadder> BuildLadder(int n,
                                          const std::vector<Rational>& alphas) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (alphas.empty()) {
    return absl::InvalidArgumentError("at least one privacy level required");
  }
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (sgn(alphas[j]) <= 0 || alphas[j] >= 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "privacy level ", ToString(alphas[j]), " outside (0,1)"));
    }
    if (j > 0 && alphas[j] <= alphas[j - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat("privacy levels must be strictly increasing: ",
                       ToString(alphas[j - 1]), " then ", ToString(alphas[j])));
    }
  }

  ReleaseLadder ladder;
  ladder.n_ = n;
  ladder.alphas_ = alphas;
  auto base = GeometricRestricted(n, alphas.front());
  if (!base.ok()) return base.status();
  auto first = PostProcess::Create(base->matrix());
  if (!first.ok()) return first.status();
  ladder.steps_.push_back(*std::move(first));

  RMatrix chained = base->matrix();
  for (std::size_t j = 1; j < alphas.size(); ++j) {
    auto step = AddPrivacy(n, alphas[j - 1], alphas[j]);
    if (!step.ok()) return step.status();
    auto product = MatMul(chained, step->matrix());
    if (!product.ok()) return product.status();
    auto expected = GeometricRestricted(n, alphas[j]);
    if (!expected.ok()) return expected.status();
    if (!(*product == expected->matrix())) {
      return absl::InternalError(absl::StrCat("ladder product at level ", j + 1,
                                              " is not geometric(",
                                              ToString(alphas[j]), ")"));
    }
    chained = *std::move(product);
    ladder.steps_.push_back(*std::move(step));
  }
  return ladder;
}

absl::StatusOr<ReleaseRecord> Release(const ReleaseLadder& ladder,
                                      int true_result, uint64_t seed) {
  if (true_result < 0 || true_result > ladder.n()) {
    return absl::OutOfRangeError(
        absl::StrCat("true result ", true_result, " outside 0..", ladder.n()));
  }
  ReleaseRecord record{.true_result = true_result, .seed = seed, .results = {}};
  SeededStream stream(seed);
  int previous = true_result;
  for (const PostProcess& step : ladder.steps()) {
    previous = stream.Draw(step.matrix().row(previous));
    record.results.push_back(previous);
  }
  return record;
}

const Rational& JointTable::at(std::span<const int> outcome) const {
  std::size_t index = 0;
  for (int r : outcome) index = index * (n + 1) + r;
  return probabilities[index];
}

absl::StatusOr<JointTable> JointDistribution(const ReleaseLadder& ladder,
                                             int true_result) {
  if (ladder.levels() > kMaxJointLevels || ladder.n() > kMaxJointN) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "joint table limited to k <= ", kMaxJointLevels, " and n <= ",
        kMaxJointN, ", got k = ", ladder.levels(), ", n = ", ladder.n()));
  }
  if (true_result < 0 || true_result > ladder.n()) {
    return absl::OutOfRangeError(
        absl::StrCat("true result ", true_result, " outside 0..", ladder.n()));
  }
  const int radix = ladder.n() + 1;
  const RMatrix& first = ladder.steps().front().matrix();
  std::vector<Rational> table(first.row(true_result).begin(),
                              first.row(true_result).end());
  for (std::size_t j = 1; j < ladder.steps().size(); ++j) {
    const RMatrix& step = ladder.steps()[j].matrix();
    std::vector<Rational> next(table.size() * radix);
    for (std::size_t index = 0; index < table.size(); ++index) {
      const int last = static_cast<int>(index % radix);
      for (int r = 0; r < radix; ++r) {
        next[index * radix + r] = table[index] * step(last, r);
      }
    }
    table = std::move(next);
  }
  return JointTable{
      .n = ladder.n(), .levels = ladder.levels(), .probabilities = table};
}

absl::StatusOr<CollusionReport> CollusionAudit(const ReleaseLadder& ladder) {
  std::vector<JointTable> tables;
  for (int i = 0; i <= ladder.n(); ++i) {
    auto table = JointDistribution(ladder, i);
    if (!table.ok()) return table.status();
    tables.push_back(*std::move(table));
  }
  const int k = ladder.levels();
  const std::size_t radix = ladder.n() + 1;

  std::vector<unsigned> masks;
  if (k <= 3) {
    for (unsigned mask = 1; mask < (1u << k); ++mask) masks.push_back(mask);
  } else {
    for (int l = 0; l < k; ++l) masks.push_back(1u << l);
    masks.push_back((1u << k) - 1);
  }

  CollusionReport report;
  for (unsigned mask : masks) {
    SubsetAudit audit;
    for (int l = 0; l < k; ++l) {
      if ((mask >> l) & 1) audit.levels.push_back(l + 1);
    }
    audit.alpha = ladder.alphas()[audit.levels.front() - 1];
    const int width = static_cast<int>(audit.levels.size());
    std::vector<std::vector<Rational>> marginals;
    for (const JointTable& table : tables) {
      marginals.push_back(Marginal(table, mask));
    }
    bool one_sided_zero = false;
    for (int i = 0; i < ladder.n(); ++i) {
      const auto& here = marginals[i];
      const auto& next = marginals[i + 1];
      for (std::size_t o = 0; o < here.size(); ++o) {
        const int zeros = (sgn(here[o]) == 0) + (sgn(next[o]) == 0);
        if (zeros == 2) continue;
        bool violated = zeros == 1;
        if (zeros == 1) {
          one_sided_zero = true;
        } else {
          Rational ratio = here[o] < next[o] ? Rational(here[o] / next[o])
                                             : Rational(next[o] / here[o]);
          violated = ratio < audit.alpha;
          if (!audit.tightest_ratio || ratio < *audit.tightest_ratio) {
            audit.tightest_ratio = std::move(ratio);
          }
        }
        if (violated && audit.ok) {
          audit.ok = false;
          audit.failing_input = i;
          audit.failing_outcome = DecodeOutcome(o, radix, width);
        }
      }
    }
    if (one_sided_zero) audit.tightest_ratio.reset();
    report.ok = report.ok && audit.ok;
    report.subsets.push_back(std::move(audit));
  }

  for (std::size_t s = 0; s < report.subsets.size(); ++s) {
    const auto& ratio = report.subsets[s].tightest_ratio;
    if (!ratio) continue;
    if (report.worst_subset < 0 ||
        *ratio < *report.subsets[report.worst_subset].tightest_ratio) {
      report.worst_subset = static_cast<int>(s);
    }
  }

  // P(r_2..r_k | r_1, i) must not depend on i.
  const std::size_t tail = tables.front().probabilities.size() / radix;
  std::vector<std::vector<Rational>> heads;
  for (const JointTable& table : tables) heads.push_back(Marginal(table, 1u));
  for (std::size_t r1 = 0; r1 < radix && report.factorizes; ++r1) {
    std::optional<std::vector<Rational>> reference;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const JointTable& table = tables[i];
      const Rational& head = heads[i][r1];
      if (sgn(head) == 0) continue;
      std::vector<Rational> conditional(tail);
      for (std::size_t t = 0; t < tail; ++t) {
        conditional[t] = table.probabilities[r1 * tail + t] / head;
      }
      if (!reference) {
        reference = std::move(conditional);
      } else if (*reference != conditional) {
        report.factorizes = false;
        break;
      }
    }
  }
  report.ok = report.ok && report.factorizes;
  return report;
}

}  // namespace geomech
