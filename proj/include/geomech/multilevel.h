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

#ifndef GEOMECH_MULTILEVEL_H_
#define GEOMECH_MULTILEVEL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "geomech/derivability.h"
#include "geomech/exactnum.h"
#include "geomech/mechanism.h"

namespace geomech {

// Correlated release of one count at k privacy levels. Step 0 is the
// geometric mechanism at alphas[0]; step j > 0 maps a level-j release to a
// level-(j+1) release.
class ReleaseLadder {
 public:
  int n() const { return n_; }
  int levels() const { return static_cast<int>(alphas_.size()); }
  const std::vector<Rational>& alphas() const { return alphas_; }
  const std::vector<PostProcess>& steps() const { return steps_; }

 private:
  friend absl::StatusOr<ReleaseLadder> BuildLadder(
      int n, const std::vector<Rational>& alphas);

  int n_ = 0;
  std::vector<Rational> alphas_;
  std::vector<PostProcess> steps_;
};

// alphas must be strictly increasing inside (0, 1). The chained products are
// recomputed and compared against the geometric mechanism at every level.
absl::StatusOr<ReleaseLadder> BuildLadder(int n,
                                          const std::vector<Rational>& alphas);

struct ReleaseRecord {
  int true_result = 0;
  uint64_t seed = 0;
  std::vector<int> results;  // one per level, least private first
};

// Draws r_1 from row `true_result` of step 0 and r_j from row r_{j-1} of
// step j - 1, all from one SeededStream(seed).
absl::StatusOr<ReleaseRecord> Release(const ReleaseLadder& ladder,
                                      int true_result, uint64_t seed);

inline constexpr int kMaxJointLevels = 4;
inline constexpr int kMaxJointN = 8;

// Exact law of (r_1..r_k) given the true result. Outcomes are indexed in
// mixed radix n+1 with r_1 most significant.
struct JointTable {
  int n = 0;
  int levels = 0;
  std::vector<Rational> probabilities;

  const Rational& at(std::span<const int> outcome) const;
};

absl::StatusOr<JointTable> JointDistribution(const ReleaseLadder& ladder,
                                             int true_result);

struct SubsetAudit {
  std::vector<int> levels;  // 1-based level numbers, increasing
  Rational alpha;           // privacy level of the least private member
  bool ok = true;
  // Smallest min(p/q, q/p) over adjacent inputs and outcomes with nonzero
  // mass; nullopt if a one-sided zero was found.
  std::optional<Rational> tightest_ratio;
  // First failure, if any.
  int failing_input = -1;
  std::vector<int> failing_outcome;
};

struct CollusionReport {
  bool ok = true;
  std::vector<SubsetAudit> subsets;
  // Conditional law of (r_2..r_k) given r_1 is the same for every input.
  bool factorizes = true;
  // Subset whose tightest ratio is smallest (index into `subsets`).
  int worst_subset = -1;
};

// Exhaustive over all subsets for k <= 3; for k = 4 only singletons and the
// full set are audited.
absl::StatusOr<CollusionReport> CollusionAudit(const ReleaseLadder& ladder);

}  // namespace geomech

#endif  // GEOMECH_MULTILEVEL_H_
