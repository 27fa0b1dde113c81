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

#include "geomech/json_io.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace geomech {
namespace {

absl::StatusOr<int> IntField(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected integer field \"", key, "\""));
  }
  return j[key].get<int>();
}

absl::StatusOr<std::vector<int>> IntArrayField(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected integer array field \"", key, "\""));
  }
  std::vector<int> out;
  for (const Json& v : j[key]) {
    if (!v.is_number_integer()) {
      return absl::InvalidArgumentError(
          absl::StrCat("non-integer entry in \"", key, "\""));
    }
    out.push_back(v.get<int>());
  }
  return out;
}

Json OptionalRational(const std::optional<Rational>& value) {
  return value ? ToJson(*value) : Json(nullptr);
}

bool IsFlat(const Json& j) {
  for (const Json& element : j) {
    if (element.is_structured()) return false;
  }
  return true;
}

void Format(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      absl::StrAppend(&out, pad, Json(key).dump(), ": ");
      Format(value, indent + 2, out);
    }
    absl::StrAppend(&out, "\n", std::string(indent, ' '), "}");
  } else if (j.is_array() && !j.empty() && !IsFlat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k > 0) out += ",\n";
      out += pad;
      Format(j[k], indent + 2, out);
    }
    absl::StrAppend(&out, "\n", std::string(indent, ' '), "]");
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k > 0) out += ", ";
      out += j[k].dump();
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

absl::StatusOr<Json> ParseJson(std::string_view text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("malformed JSON");
  return j;
}

std::string FormatJson(const Json& j) {
  std::string out;
  Format(j, 0, out);
  out += "\n";
  return out;
}

Json ToJson(const Rational& value) { return ToString(value); }

absl::StatusOr<Rational> RationalFromJson(const Json& j) {
  if (j.is_string()) return ParseRational(j.get<std::string>());
  if (j.is_number_integer()) return ParseRational(j.dump());
  return absl::InvalidArgumentError(
      absl::StrCat("expected a rational string, got ", j.dump()));
}

Json ToJson(const RMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const Rational& x : m.row(r)) row.push_back(ToJson(x));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

absl::StatusOr<RMatrix> RMatrixFromJson(const Json& j) {
  auto rows = IntField(j, "rows");
  if (!rows.ok()) return rows.status();
  auto cols = IntField(j, "cols");
  if (!cols.ok()) return cols.status();
  if (*rows < 0 || *cols < 0) {
    return absl::InvalidArgumentError("negative matrix dimension");
  }
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(*rows)) {
    return absl::InvalidArgumentError(
        absl::StrCat("\"entries\" must hold ", *rows, " rows"));
  }
  std::vector<Rational> entries;
  entries.reserve(*rows * *cols);
  for (const Json& row : j["entries"]) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(*cols)) {
      return absl::InvalidArgumentError(
          absl::StrCat("every row must hold ", *cols, " entries"));
    }
    for (const Json& v : row) {
      auto value = RationalFromJson(v);
      if (!value.ok()) return value.status();
      entries.push_back(*std::move(value));
    }
  }
  return RMatrix::Create(*rows, *cols, std::move(entries));
}

Json ToJson(const Mechanism& m) {
  Json j{{"n", m.n()}};
  if (m.alpha_claimed()) j["alpha"] = ToJson(*m.alpha_claimed());
  j["matrix"] = ToJson(m.matrix());
  return j;
}

absl::StatusOr<Mechanism> MechanismFromJson(const Json& j) {
  auto n = IntField(j, "n");
  if (!n.ok()) return n.status();
  if (!j.contains("matrix")) {
    return absl::InvalidArgumentError("missing \"matrix\"");
  }
  auto matrix = RMatrixFromJson(j["matrix"]);
  if (!matrix.ok()) return matrix.status();
  if (matrix->rows() != static_cast<std::size_t>(*n + 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("\"n\" = ", *n, " but matrix is ", matrix->ShapeString()));
  }
  std::optional<Rational> alpha;
  if (j.contains("alpha") && !j["alpha"].is_null()) {
    auto parsed = RationalFromJson(j["alpha"]);
    if (!parsed.ok()) return parsed.status();
    alpha = *std::move(parsed);
  }
  return Mechanism::Create(*std::move(matrix), std::move(alpha));
}

Json ToJson(const ConsumerProfile& profile) {
  return Json{{"n", profile.n()},
              {"loss", ToJson(profile.loss())},
              {"side_info", profile.side_info()}};
}

absl::StatusOr<ConsumerProfile> ConsumerProfileFromJson(const Json& j) {
  auto n = IntField(j, "n");
  if (!n.ok()) return n.status();
  if (!j.contains("loss"))
    return absl::InvalidArgumentError("missing \"loss\"");
  auto loss = RMatrixFromJson(j["loss"]);
  if (!loss.ok()) return loss.status();
  if (loss->rows() != static_cast<std::size_t>(*n + 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("\"n\" = ", *n, " but loss is ", loss->ShapeString()));
  }
  auto side = IntArrayField(j, "side_info");
  if (!side.ok()) return side.status();
  return ConsumerProfile::Create(*std::move(loss), *std::move(side));
}

Json ToJson(const DbMechanism& m) {
  return Json{{"n", m.space().n()},
              {"row_domain", m.space().row_domain_size()},
              {"predicate_true_values", m.space().predicate_true_values()},
              {"matrix", ToJson(m.matrix())}};
}

absl::StatusOr<DbMechanism> DbMechanismFromJson(const Json& j) {
  auto n = IntField(j, "n");
  if (!n.ok()) return n.status();
  auto domain = IntField(j, "row_domain");
  if (!domain.ok()) return domain.status();
  auto predicate = IntArrayField(j, "predicate_true_values");
  if (!predicate.ok()) return predicate.status();
  auto space = DatabaseSpace::Create(*domain, *n, *std::move(predicate));
  if (!space.ok()) return space.status();
  if (!j.contains("matrix")) {
    return absl::InvalidArgumentError("missing \"matrix\"");
  }
  auto matrix = RMatrixFromJson(j["matrix"]);
  if (!matrix.ok()) return matrix.status();
  return DbMechanism::Create(*std::move(space), *std::move(matrix));
}

Json ToJson(const PostProcess& post) { return ToJson(post.matrix()); }

Json ToJson(const DpVerdict& verdict) {
  if (verdict.ok) return Json{{"ok", true}};
  return Json{
      {"ok", false},
      {"row", verdict.row},
      {"col", verdict.col},
      {"x_row", ToJson(verdict.x_row)},
      {"x_next", ToJson(verdict.x_next)},
      {"ratio_next_over_row", OptionalRational(verdict.ratio_next_over_row)},
      {"ratio_row_over_next", OptionalRational(verdict.ratio_row_over_next)}};
}

Json ToJson(const DerivabilityReport& report) {
  Json j{{"derivable", report.derivable}};
  if (report.witness) j["witness"] = ToJson(*report.witness);
  if (report.violation) {
    const TripleViolation& v = *report.violation;
    j["violation"] = Json{{"column", v.column},
                          {"rows", {v.row, v.row + 1, v.row + 2}},
                          {"margin", ToJson(v.margin)}};
  }
  return j;
}

Json ToJson(const SampleTrace& trace) {
  return Json{{"seed", trace.seed},
              {"true_result", trace.true_result},
              {"output", trace.output}};
}

Json ToJson(const OptimalMechanismResult& result) {
  return Json{{"loss", ToJson(result.loss)},
              {"mechanism", ToJson(result.mechanism)}};
}

Json ToJson(const OptimalInteractionResult& result) {
  return Json{{"loss", ToJson(result.loss)},
              {"post", ToJson(result.post)},
              {"induced", ToJson(result.induced)}};
}

Json ToJson(const std::vector<RowPairPattern>& patterns) {
  Json out = Json::array();
  for (const RowPairPattern& p : patterns) {
    out.push_back(Json{{"rows", {p.row, p.row + 1}},
                       {"prefix_end", p.prefix_end},
                       {"suffix_start", p.suffix_start},
                       {"matches", p.matches}});
  }
  return out;
}

Json ToJson(const ReleaseRecord& record) {
  return Json{{"true_result", record.true_result},
              {"seed", record.seed},
              {"results", record.results}};
}

Json ToJson(const ReleaseLadder& ladder, const CollusionReport& report) {
  Json subsets = Json::array();
  for (const SubsetAudit& s : report.subsets) {
    Json entry{{"levels", s.levels},
               {"alpha", ToJson(s.alpha)},
               {"ok", s.ok},
               {"tightest_ratio", OptionalRational(s.tightest_ratio)}};
    if (!s.ok) {
      entry["failing_input"] = s.failing_input;
      entry["failing_outcome"] = s.failing_outcome;
    }
    subsets.push_back(std::move(entry));
  }
  std::vector<std::string> alphas;
  for (const Rational& a : ladder.alphas()) alphas.push_back(ToString(a));
  Json j{{"n", ladder.n()},
         {"alphas", alphas},
         {"ok", report.ok},
         {"factorizes", report.factorizes},
         {"subsets", subsets}};
  std::string summary = report.ok ? "ok" : "violation";
  if (report.worst_subset >= 0) {
    const SubsetAudit& worst = report.subsets[report.worst_subset];
    j["worst_ratio"] = ToJson(*worst.tightest_ratio);
    j["worst_levels"] = worst.levels;
    absl::StrAppend(&summary, ", worst ratio at alpha=", ToString(worst.alpha));
  }
  j["summary"] = summary;
  return j;
}

Json ToJson(const DbDpVerdict& verdict) {
  if (verdict.ok) return Json{{"ok", true}};
  return Json{{"ok", false},
              {"database", verdict.database},
              {"neighbor", verdict.neighbor},
              {"col", verdict.col}};
}

Json ToJson(const ReductionReport& report) {
  return Json{{"oblivious_dp", report.oblivious_dp},
              {"oblivious_loss", ToJson(report.oblivious_loss)},
              {"database_loss", ToJson(report.database_loss)},
              {"loss_dominated", report.loss_dominated},
              {"strict", report.strict},
              {"oblivious", ToJson(report.oblivious)}};
}

}  // namespace geomech
