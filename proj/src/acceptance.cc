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

#include "geomech/acceptance.h"

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "boost/math/distributions/chi_squared.hpp"
#include "geomech/derivability.h"
#include "geomech/exactnum.h"
#include "geomech/json_io.h"
#include "geomech/mechanism.h"
#include "geomech/multilevel.h"
#include "geomech/oblivious.h"
#include "geomech/optimizer.h"
#include "geomech/random_instances.h"

namespace geomech {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void Fail(std::string message) {
    if (passed) detail = std::move(message);
    passed = false;
  }
};

Rational R(std::string_view text) { return *ParseRational(text); }

std::vector<Rational> Grid(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* text : texts) out.push_back(R(text));
  return out;
}

std::vector<int> Span(int from, int to) {
  std::vector<int> out(to - from + 1);
  std::iota(out.begin(), out.end(), from);
  return out;
}

Mechanism NonDerivableMechanism() {
  std::vector<Rational> entries = Grid({"1/9", "2/9", "4/9", "2/9",  //
                                        "2/9", "1/9", "2/9", "4/9",  //
                                        "4/9", "2/9", "1/9", "2/9",  //
                                        "13/18", "1/9", "1/18", "1/9"});
  return *Mechanism::Create(*RMatrix::Create(4, 4, std::move(entries)),
                            R("1/2"));
}

Outcome NonDerivable() {
  Outcome out;
  const Mechanism m = NonDerivableMechanism();
  const Rational alpha = R("1/2");
  if (!CheckDp(m, alpha).ok) out.Fail("fixture is not 1/2-DP");
  auto report = CheckDerivable(m, alpha);
  if (!report.ok()) {
    out.Fail(std::string(report.status().message()));
    return out;
  }
  if (report->derivable || !report->violation) {
    out.Fail("fixture reported derivable");
    return out;
  }
  const TripleViolation& v = *report->violation;
  if (v.column != 1 || v.row != 0 || v.margin != R("-1/12")) {
    out.Fail(absl::StrCat("violation at column ", v.column, ", rows ", v.row,
                          "..", v.row + 2, ", margin ", ToString(v.margin)));
  }
  if (out.passed) out.detail = "1/2-DP; column 1, rows 0..2, margin -1/12";
  return out;
}

Outcome DeterminantLaw() {
  Outcome out;
  int checked = 0;
  for (const Rational& alpha : Grid({"1/4", "1/3", "1/2", "2/3"})) {
    for (int size = 2; size <= 8; ++size) {
      std::vector<Rational> entries;
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j)
          entries.push_back(Pow(alpha, std::abs(i - j)));
      }
      const Rational det =
          *Determinant(*RMatrix::Create(size, size, std::move(entries)));
      const Rational expected = Pow(1 - alpha * alpha, size - 1);
      if (det != expected) {
        out.Fail(absl::StrCat("size ", size, ", alpha ", ToString(alpha),
                              ": det ", ToString(det),
                              " != ", ToString(expected)));
      }
      auto g = GeometricRestricted(size - 1, alpha);
      if (sgn(*Determinant(g->matrix())) <= 0) {
        out.Fail(absl::StrCat("det(G) <= 0 at size ", size, ", alpha ",
                              ToString(alpha)));
      }
      ++checked;
    }
  }
  if (out.passed) out.detail = absl::StrCat(checked, " (size, alpha) pairs");
  return out;
}

Outcome AddPrivacyGrid() {
  Outcome out;
  const auto grid = Grid({"1/5", "1/4", "1/3", "1/2", "2/3", "3/4"});
  int ladders = 0, rejected = 0;
  for (int n = 1; n <= 5; ++n) {
    for (const Rational& alpha : grid) {
      for (const Rational& beta : grid) {
        auto t = AddPrivacy(n, alpha, beta);
        const std::string where = absl::StrCat("n = ", n, ", ", ToString(alpha),
                                               " -> ", ToString(beta));
        if (alpha > beta) {
          if (t.ok()) out.Fail(absl::StrCat(where, ": accepted"));
          ++rejected;
          continue;
        }
        if (alpha == beta) continue;
        if (!t.ok()) {
          out.Fail(absl::StrCat(where, ": ", t.status().message()));
          continue;
        }
        bool nonnegative = true;
        for (const Rational& x : t->matrix().entries()) {
          nonnegative = nonnegative && sgn(x) >= 0;
        }
        const auto product =
            MatMul(GeometricRestricted(n, alpha)->matrix(), t->matrix());
        if (!nonnegative || !IsRowStochastic(t->matrix()) ||
            !(*product == GeometricRestricted(n, beta)->matrix())) {
          out.Fail(absl::StrCat(where, ": factor check failed"));
        }
        ++ladders;
      }
    }
  }
  if (out.passed) {
    out.detail = absl::StrCat(ladders, " factors verified, ", rejected,
                              " reversed pairs rejected");
  }
  return out;
}

std::vector<std::pair<std::string, ConsumerProfile>> NamedProfiles(
    int n, std::mt19937_64& rng) {
  std::vector<std::pair<std::string, ConsumerProfile>> out;
  const std::vector<std::pair<std::string, std::vector<int>>> sides = {
      {"full", Span(0, n)},
      {"prefix", Span(0, n / 2)},
      {"suffix", Span((n + 1) / 2, n)},
      {"singleton", {n / 2}}};
  for (LossKind kind :
       {LossKind::kAbs, LossKind::kSquare, LossKind::kZeroOne}) {
    for (const auto& [side_name, side] : sides) {
      out.emplace_back(
          absl::StrCat(std::string(LossKindName(kind)), "/", side_name),
          *ConsumerProfile::Create(kind, n, side));
    }
  }
  for (int t = 0; t < 20; ++t) {
    out.emplace_back(absl::StrCat("random#", t), RandomMonotoneProfile(n, rng));
  }
  return out;
}

Outcome UniversalOptimality() {
  Outcome out;
  int instances = 0;
  for (int n = 1; n <= 5; ++n) {
    for (const Rational& alpha : Grid({"1/4", "1/3", "1/2", "2/3"})) {
      std::mt19937_64 rng(1000 * n + alpha.get_den().get_ui());
      const Mechanism g = *GeometricRestricted(n, alpha);
      for (const auto& [name, profile] : NamedProfiles(n, rng)) {
        const std::string where =
            absl::StrCat("n = ", n, ", alpha = ", ToString(alpha), ", ", name);
        auto optimal = OptimalMechanism(n, alpha, profile);
        auto interaction = OptimalInteraction(g, profile);
        if (!optimal.ok() || !interaction.ok()) {
          out.Fail(absl::StrCat(where, ": ",
                                optimal.ok() ? interaction.status().message()
                                             : optimal.status().message()));
          continue;
        }
        if (optimal->loss != interaction->loss) {
          out.Fail(absl::StrCat(where, ": optimal ", ToString(optimal->loss),
                                " vs interaction ",
                                ToString(interaction->loss)));
        }
        ++instances;
      }
    }
  }
  if (out.passed) {
    out.detail = absl::StrCat(instances, " profiles, exact equality");
  }
  return out;
}

Outcome Characterization() {
  Outcome out;
  std::mt19937_64 rng(77);
  const auto grid = Grid({"1/5", "1/4", "1/3", "1/2", "2/3", "3/4"});
  int derivable = 0, underivable = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 5;
    const Rational& alpha = grid[(trial / 5) % grid.size()];
    const Mechanism m = RandomDpMechanism(n, alpha, rng);
    auto triple = CheckDerivable(m, alpha);
    auto cramer = CramerOracle(m, alpha);
    const std::string where = absl::StrCat("trial ", trial);
    if (!triple.ok() || !cramer.ok()) {
      out.Fail(absl::StrCat(
          where, ": ",
          triple.ok() ? cramer.status().message() : triple.status().message()));
      continue;
    }
    if (triple->derivable != cramer->derivable) {
      out.Fail(absl::StrCat(where, ": triple test and Cramer oracle disagree"));
      continue;
    }
    if (triple->derivable) {
      ++derivable;
      const auto rebuilt = MatMul(GeometricRestricted(n, alpha)->matrix(),
                                  triple->witness->matrix());
      if (!(*rebuilt == m.matrix())) {
        out.Fail(absl::StrCat(where, ": witness does not reconstruct"));
      }
    } else {
      ++underivable;
    }
  }
  if (out.passed) {
    out.detail =
        absl::StrCat(derivable + underivable, " mechanisms (", derivable,
                     " derivable, ", underivable, " not), verdicts agree");
  }
  return out;
}

Outcome Collusion() {
  Outcome out;
  const auto grid = Grid({"1/5", "1/4", "1/3", "1/2", "2/3", "3/4"});
  int audited = 0;
  for (int n = 1; n <= 4; ++n) {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = a + 1; b < grid.size(); ++b) {
        std::vector<std::vector<Rational>> ladders = {{grid[a], grid[b]}};
        for (std::size_t c = b + 1; c < grid.size(); ++c) {
          ladders.push_back({grid[a], grid[b], grid[c]});
        }
        for (const auto& alphas : ladders) {
          auto ladder = BuildLadder(n, alphas);
          auto report = ladder.ok()
                            ? CollusionAudit(*ladder)
                            : absl::StatusOr<CollusionReport>(ladder.status());
          std::string where = absl::StrCat("n = ", n, ", alphas");
          for (const Rational& x : alphas)
            absl::StrAppend(&where, " ", ToString(x));
          if (!report.ok()) {
            out.Fail(absl::StrCat(where, ": ", report.status().message()));
            continue;
          }
          if (!report->factorizes) {
            out.Fail(absl::StrCat(where, ": conditional law depends on input"));
          }
          const std::size_t expected = (1u << alphas.size()) - 1;
          if (!report->ok || report->subsets.size() != expected) {
            out.Fail(absl::StrCat(where, ": subset bound violated"));
          }
          ++audited;
        }
      }
    }
  }
  if (out.passed) {
    out.detail = absl::StrCat(audited, " ladders, every subset within bound");
  }
  return out;
}

Outcome ObliviousReduction() {
  Outcome out;
  std::mt19937_64 rng(4242);
  const Rational alpha = R("1/2");
  int strict = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const DatabaseSpace space = *DatabaseSpace::Create(2, n, {1});
    const DbMechanism m = RandomDpDbMechanism(space, alpha, rng);
    const ConsumerProfile profile =
        *ConsumerProfile::Create(LossKind::kAbs, n, Span(0, n));
    auto report = ReductionAudit(m, alpha, profile);
    const std::string where = absl::StrCat("trial ", trial);
    if (!report.ok()) {
      out.Fail(absl::StrCat(where, ": ", report.status().message()));
      continue;
    }
    if (!report->oblivious_dp || !CheckDp(report->oblivious, alpha).ok) {
      out.Fail(absl::StrCat(where, ": averaged mechanism not DP"));
    }
    if (!report->loss_dominated) {
      out.Fail(absl::StrCat(where, ": averaged loss ",
                            ToString(report->oblivious_loss), " > ",
                            ToString(report->database_loss)));
    }
    strict += report->strict;
  }
  if (out.passed) {
    out.detail =
        absl::StrCat("50 database mechanisms, ", strict, " strictly improved");
  }
  return out;
}

Outcome SamplingFidelity() {
  Outcome out;
  constexpr int kDraws = 50000;
  struct Case {
    Mechanism m;
    int row;
  };
  const std::vector<Case> cases = {
      {*GeometricRestricted(1, R("1/2")), 0},
      {*GeometricRestricted(3, R("1/4")), 0},
      {*GeometricRestricted(3, R("1/2")), 2},
      {*GeometricRestricted(5, R("2/3")), 3},
      {NonDerivableMechanism(), 3},
  };
  double worst = 0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const Case& item = cases[c];
    std::vector<int> counts(item.m.size());
    for (uint64_t draw = 0; draw < kDraws; ++draw) {
      const uint64_t seed = (uint64_t{c} << 32) | draw;
      auto first = Sample(item.m, item.row, seed);
      auto again = Sample(item.m, item.row, seed);
      if (first->output != again->output) {
        out.Fail(absl::StrCat("case ", c, ": replay differs at seed ", seed));
      }
      ++counts[first->output];
    }
    double statistic = 0;
    int cells = 0;
    for (int r = 0; r < item.m.size(); ++r) {
      const double expected = kDraws * item.m.prob(item.row, r).get_d();
      if (expected == 0) {
        if (counts[r] != 0)
          out.Fail(absl::StrCat("case ", c, ": zero cell hit"));
        continue;
      }
      statistic += (counts[r] - expected) * (counts[r] - expected) / expected;
      ++cells;
    }
    const boost::math::chi_squared dist(cells - 1);
    const double critical = quantile(complement(dist, 0.001));
    worst = std::max(worst, statistic / critical);
    if (statistic > critical) {
      out.Fail(absl::StrFormat("case %d: chi-square %.3f > %.3f", c, statistic,
                               critical));
    }
  }
  auto ladder = BuildLadder(3, Grid({"1/4", "1/2"}));
  for (uint64_t seed : {uint64_t{7}, uint64_t{8}, uint64_t{1} << 40}) {
    const std::string a = ToJson(*Release(*ladder, 2, seed)).dump();
    const std::string b = ToJson(*Release(*ladder, 2, seed)).dump();
    if (a != b) out.Fail(absl::StrCat("release replay differs at seed ", seed));
  }
  if (out.passed) {
    out.detail = absl::StrFormat(
        "5 rows x %d draws, largest statistic/critical = %.3f (approx.)",
        kDraws, worst);
  }
  return out;
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& Criteria() {
  static const auto* criteria = new std::vector<Criterion>{
      {"non-derivable", 1, NonDerivable},
      {"determinant", 5, DeterminantLaw},
      {"add-privacy", 10, AddPrivacyGrid},
      {"optimality", 600, UniversalOptimality},
      {"characterization", 120, Characterization},
      {"collusion", 120, Collusion},
      {"oblivious", 60, ObliviousReduction},
      {"sampling", 60, SamplingFidelity},
  };
  return *criteria;
}

}  // namespace

const std::vector<std::string>& AcceptanceSuiteNames() {
  static const auto* names = [] {
    auto* out = new std::vector<std::string>;
    for (const Criterion& c : Criteria()) out->push_back(c.name);
    return out;
  }();
  return *names;
}

absl::StatusOr<CriterionResult> RunCriterion(std::string_view name) {
  const auto& criteria = Criteria();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (criteria[i].name != name) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = criteria[i].run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    CriterionResult result{.id = static_cast<int>(i) + 1,
                           .name = criteria[i].name,
                           .passed = outcome.passed,
                           .detail = std::move(outcome.detail),
                           .seconds = seconds,
                           .limit_seconds = criteria[i].limit_seconds};
    if (result.passed && seconds > result.limit_seconds) {
      result.passed = false;
      result.detail = absl::StrCat("over time limit; ", result.detail);
    }
    return result;
  }
  return absl::NotFoundError(
      absl::StrCat("unknown suite \"", std::string(name), "\""));
}

std::vector<CriterionResult> RunAllCriteria() {
  std::vector<CriterionResult> out;
  for (const std::string& name : AcceptanceSuiteNames()) {
    out.push_back(*RunCriterion(name));
  }
  return out;
}

std::string FormatCriterion(const CriterionResult& result) {
  return absl::StrFormat("%s [%d] %s (%.2fs / %gs): %s",
                         result.passed ? "PASS" : "FAIL", result.id,
                         result.name, result.seconds, result.limit_seconds,
                         result.detail);
}

}  // namespace geomech
