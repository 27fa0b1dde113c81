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

#include "cli.h"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "geomech/acceptance.h"
#include "geomech/derivability.h"
#include "geomech/exactnum.h"
#include "geomech/json_io.h"
#include "geomech/mechanism.h"
#include "geomech/multilevel.h"
#include "geomech/oblivious.h"
#include "geomech/optimizer.h"

namespace geomech {
namespace {

// A command yields a JSON document plus an exit code, or an error.
struct Report {
  Json body;
  int code = kExitOk;
};

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  auto j = ParseJson(*text);
  if (!j.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", j.status().message()));
  }
  return j;
}

absl::StatusOr<Mechanism> ReadMechanism(const std::string& path) {
  auto j = ReadJsonFile(path);
  if (!j.ok()) return j.status();
  auto m = MechanismFromJson(*j);
  if (!m.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", m.status().message()));
  }
  return m;
}

absl::StatusOr<Rational> ParseAlpha(const std::string& text) {
  auto alpha = ParseRational(text);
  if (!alpha.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--alpha: ", alpha.status().message()));
  }
  return alpha;
}

absl::StatusOr<std::vector<Rational>> ParseAlphas(const std::string& text) {
  std::vector<Rational> out;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    auto alpha = ParseRational(std::string(part));
    if (!alpha.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("--alphas: ", alpha.status().message()));
    }
    out.push_back(*std::move(alpha));
  }
  return out;
}

// "a..b" (inclusive) or "a,b,c"; empty means every result 0..n.
absl::StatusOr<std::vector<int>> ParseSide(const std::string& text, int n) {
  std::vector<int> out;
  if (text.empty()) {
    for (int i = 0; i <= n; ++i) out.push_back(i);
    return out;
  }
  const std::size_t dots = text.find("..");
  if (dots != std::string::npos) {
    int lo = 0, hi = 0;
    if (!absl::SimpleAtoi(text.substr(0, dots), &lo) ||
        !absl::SimpleAtoi(text.substr(dots + 2), &hi) || lo > hi) {
      return absl::InvalidArgumentError(
          absl::StrCat("--side: bad range \"", text, "\""));
    }
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    int value = 0;
    if (!absl::SimpleAtoi(part, &value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("--side: bad value \"", std::string(part), "\""));
    }
    out.push_back(value);
  }
  return out;
}

// --loss is a built-in name or @path to a loss matrix (or a profile whose
// side_info is used when --side is absent).
absl::StatusOr<ConsumerProfile> BuildProfile(const std::string& loss,
                                             const std::string& side, int n) {
  if (loss.empty() || loss[0] != '@') {
    auto kind = ParseLossKind(loss);
    if (!kind.ok()) return kind.status();
    auto members = ParseSide(side, n);
    if (!members.ok()) return members.status();
    return ConsumerProfile::Create(*kind, n, *std::move(members));
  }
  const std::string path = loss.substr(1);
  auto j = ReadJsonFile(path);
  if (!j.ok()) return j.status();
  const Json& matrix_json = j->contains("loss") ? (*j)["loss"] : *j;
  auto matrix = RMatrixFromJson(matrix_json);
  if (!matrix.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", matrix.status().message()));
  }
  std::vector<int> members;
  if (side.empty() && j->contains("side_info")) {
    for (const Json& v : (*j)["side_info"]) {
      if (!v.is_number_integer()) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": non-integer side_info entry"));
      }
      members.push_back(v.get<int>());
    }
  } else {
    auto parsed = ParseSide(side, n);
    if (!parsed.ok()) return parsed.status();
    members = *std::move(parsed);
  }
  if (matrix->rows() != static_cast<std::size_t>(n + 1) ||
      matrix->cols() != static_cast<std::size_t>(n + 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": loss is ", matrix->ShapeString(),
                     " but the mechanism needs ", n + 1, "x", n + 1));
  }
  auto profile =
      ConsumerProfile::Create(*std::move(matrix), std::move(members));
  if (!profile.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", profile.status().message()));
  }
  return profile;
}

struct Flags {
  int n = 0;
  std::string alpha;
  std::string alphas;
  std::string form = "restricted";
  int64_t bound = 10;
  std::string kind;
  std::string mechanism;
  std::string db_mechanism;
  std::string loss;
  std::string side;
  bool lexicographic = false;
  bool diagnostic = false;
  int true_result = 0;
  uint64_t seed = 0;
  std::string suite = "all";
  std::string out;
};

absl::StatusOr<Report> Gen(const Flags& f) {
  auto alpha = ParseAlpha(f.alpha);
  if (!alpha.ok()) return alpha.status();
  if (f.form == "full-pmf") {
    if (f.bound < 0) return absl::InvalidArgumentError("--bound must be >= 0");
    Json pmf = Json::array();
    for (int64_t z = -f.bound; z <= f.bound; ++z) {
      auto p = GeometricFullPmf(*alpha, z);
      if (!p.ok()) return p.status();
      pmf.push_back(Json{{"z", z}, {"p", ToJson(*p)}});
    }
    return Report{
        Json{{"alpha", ToJson(*alpha)}, {"bound", f.bound}, {"pmf", pmf}}};
  }
  if (sgn(*alpha) < 0 || *alpha > 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("--alpha ", ToString(*alpha), " outside [0,1]"));
  }
  auto m = GeometricRestricted(f.n, *alpha);
  if (!m.ok()) return m.status();
  return Report{ToJson(*m)};
}

absl::StatusOr<Report> Check(const Flags& f) {
  auto m = ReadMechanism(f.mechanism);
  if (!m.ok()) return m.status();
  auto alpha = ParseAlpha(f.alpha);
  if (!alpha.ok()) return alpha.status();
  if (f.kind == "dp") {
    const DpVerdict verdict = CheckDp(*m, *alpha);
    return Report{ToJson(verdict), verdict.ok ? kExitOk : kExitNegative};
  }
  auto report = CheckDerivable(*m, *alpha);
  if (!report.ok()) return report.status();
  return Report{ToJson(*report), report->derivable ? kExitOk : kExitNegative};
}

absl::StatusOr<Report> Optimize(const Flags& f) {
  auto alpha = ParseAlpha(f.alpha);
  if (!alpha.ok()) return alpha.status();
  if (f.n < 1) return absl::InvalidArgumentError("--n must be >= 1");
  auto profile = BuildProfile(f.loss, f.side, f.n);
  if (!profile.ok()) return profile.status();
  auto result = OptimalMechanism(f.n, *alpha, *profile,
                                 {.lexicographic = f.lexicographic});
  if (!result.ok()) return result.status();
  Json body = ToJson(*result);
  if (f.diagnostic) {
    body["row_patterns"] =
        ToJson(RowPatternDiagnostic(result->mechanism, *alpha));
  }
  return Report{std::move(body)};
}

absl::StatusOr<Report> Interact(const Flags& f) {
  auto m = ReadMechanism(f.mechanism);
  if (!m.ok()) return m.status();
  auto profile = BuildProfile(f.loss, f.side, m->n());
  if (!profile.ok()) return profile.status();
  auto result = OptimalInteraction(*m, *profile);
  if (!result.ok()) return result.status();
  return Report{ToJson(*result)};
}

absl::StatusOr<Report> SampleCommand(const Flags& f) {
  auto m = ReadMechanism(f.mechanism);
  if (!m.ok()) return m.status();
  auto trace = Sample(*m, f.true_result, f.seed);
  if (!trace.ok()) return trace.status();
  return Report{ToJson(*trace)};
}

absl::StatusOr<Report> ReleaseCommand(const Flags& f) {
  auto alphas = ParseAlphas(f.alphas);
  if (!alphas.ok()) return alphas.status();
  auto ladder = BuildLadder(f.n, *alphas);
  if (!ladder.ok()) return ladder.status();
  auto record = Release(*ladder, f.true_result, f.seed);
  if (!record.ok()) return record.status();
  return Report{ToJson(*record)};
}

absl::StatusOr<Report> Audit(const Flags& f) {
  auto alphas = ParseAlphas(f.alphas);
  if (!alphas.ok()) return alphas.status();
  auto ladder = BuildLadder(f.n, *alphas);
  if (!ladder.ok()) return ladder.status();
  auto report = CollusionAudit(*ladder);
  if (!report.ok()) return report.status();
  return Report{ToJson(*ladder, *report), report->ok ? kExitOk : kExitNegative};
}

absl::StatusOr<Report> Reduce(const Flags& f) {
  auto j = ReadJsonFile(f.db_mechanism);
  if (!j.ok()) return j.status();
  auto m = DbMechanismFromJson(*j);
  if (!m.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(f.db_mechanism, ": ", m.status().message()));
  }
  auto alpha = ParseAlpha(f.alpha);
  if (!alpha.ok()) return alpha.status();
  const DbDpVerdict verdict = CheckDbDp(*m, *alpha);
  if (!verdict.ok) {
    return Report{Json{{"db_dp", ToJson(verdict)}}, kExitNegative};
  }
  auto profile = BuildProfile(f.loss, f.side, m->space().n());
  if (!profile.ok()) return profile.status();
  auto report = ReductionAudit(*m, *alpha, *profile);
  if (!report.ok()) return report.status();
  const bool ok = report->oblivious_dp && report->loss_dominated;
  return Report{ToJson(*report), ok ? kExitOk : kExitNegative};
}

int Emit(const std::string& text, const std::string& path, std::ostream& out,
         std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int Verify(const Flags& f, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (f.suite == "all") {
    names = AcceptanceSuiteNames();
  } else {
    names.push_back(f.suite);
  }
  std::string text;
  bool passed = true;
  for (const std::string& name : names) {
    auto result = RunCriterion(name);
    if (!result.ok()) {
      err << "error: " << result.status().message() << "\n";
      return kExitUsage;
    }
    passed = passed && result->passed;
    absl::StrAppend(&text, FormatCriterion(*result), "\n");
  }
  const int written = Emit(text, f.out, out, err);
  if (written != kExitOk) return written;
  return passed ? kExitOk : kExitNegative;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Flags f;
  CLI::App app{"Exact differential privacy for count queries", "geomech"};
  app.require_subcommand(1);
  app.add_option("--out", f.out, "Write the result to this file");

  auto* gen = app.add_subcommand("gen", "Geometric mechanism or pmf");
  gen->add_option("--n", f.n, "Largest query result");
  gen->add_option("--alpha", f.alpha, "Privacy level p/q")->required();
  gen->add_option("--form", f.form)
      ->check(CLI::IsMember({"restricted", "full-pmf"}));
  gen->add_option("--bound", f.bound, "Largest |z| listed for full-pmf");

  auto* check = app.add_subcommand("check", "Verify privacy or derivability");
  check->add_option("--kind", f.kind)
      ->required()
      ->check(CLI::IsMember({"dp", "derivable"}));
  check->add_option("--mechanism", f.mechanism, "Mechanism JSON")->required();
  check->add_option("--alpha", f.alpha)->required();

  auto* optimize = app.add_subcommand("optimize", "Optimal private mechanism");
  optimize->add_option("--n", f.n)->required();
  optimize->add_option("--alpha", f.alpha)->required();
  optimize->add_option("--loss", f.loss, "abs, square, zero_one or @file")
      ->required();
  optimize->add_option("--side", f.side, "a..b or a,b,c (default: all)");
  optimize->add_flag("--lexicographic", f.lexicographic,
                     "Break ties toward mass near the diagonal");
  optimize->add_flag("--diagnostic", f.diagnostic,
                     "Report the row-pair ratio pattern");

  auto* interact = app.add_subcommand("interact", "Optimal reinterpretation");
  interact->add_option("--mechanism", f.mechanism)->required();
  interact->add_option("--loss", f.loss)->required();
  interact->add_option("--side", f.side);

  auto* sample = app.add_subcommand("sample", "Draw one output");
  sample->add_option("--mechanism", f.mechanism)->required();
  sample->add_option("--true-result", f.true_result)->required();
  sample->add_option("--seed", f.seed)->envname("GEOMECH_SEED");

  auto* release = app.add_subcommand("release", "Multi-level release");
  release->add_option("--n", f.n)->required();
  release->add_option("--alphas", f.alphas, "Comma-separated levels")
      ->required();
  release->add_option("--true-result", f.true_result)->required();
  release->add_option("--seed", f.seed)->envname("GEOMECH_SEED");

  auto* audit = app.add_subcommand("audit", "Collusion audit of a ladder");
  audit->add_option("--n", f.n)->required();
  audit->add_option("--alphas", f.alphas)->required();

  auto* reduce = app.add_subcommand("reduce", "Oblivious reduction audit");
  reduce->add_option("--db-mechanism", f.db_mechanism)->required();
  reduce->add_option("--alpha", f.alpha)->required();
  reduce->add_option("--loss", f.loss)->required();
  reduce->add_option("--side", f.side);

  auto* verify = app.add_subcommand("verify", "Run acceptance criteria");
  verify->add_option("--suite", f.suite, "Criterion name or all");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (verify->parsed()) return Verify(f, out, err);

  absl::StatusOr<Report> report;
  if (gen->parsed()) {
    report = Gen(f);
  } else if (check->parsed()) {
    report = Check(f);
  } else if (optimize->parsed()) {
    report = Optimize(f);
  } else if (interact->parsed()) {
    report = Interact(f);
  } else if (sample->parsed()) {
    report = SampleCommand(f);
  } else if (release->parsed()) {
    report = ReleaseCommand(f);
  } else if (audit->parsed()) {
    report = Audit(f);
  } else {
    report = Reduce(f);
  }
  if (!report.ok()) {
    err << "error: " << report.status().message() << "\n";
    return kExitUsage;
  }
  const int written = Emit(FormatJson(report->body), f.out, out, err);
  return written != kExitOk ? written : report->code;
}

}  // namespace geomech
