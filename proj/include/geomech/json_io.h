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

#ifndef GEOMECH_JSON_IO_H_
#define GEOMECH_JSON_IO_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "geomech/derivability.h"
#include "geomech/exactnum.h"
#include "geomech/mechanism.h"
#include "geomech/multilevel.h"
#include "geomech/oblivious.h"
#include "geomech/optimizer.h"
#include "json.hpp"

// Wire formats. Every number that is a probability, loss or privacy level
// travels as an exact "p/q" string.
namespace geomech {

using Json = nlohmann::ordered_json;

absl::StatusOr<Json> ParseJson(std::string_view text);

// Two-space indented JSON with arrays of scalars kept on one line, so
// matrices print one row per line. Ends with a newline.
std::string FormatJson(const Json& j);

Json ToJson(const Rational& value);
// Accepts a "p/q" string or a JSON integer.
absl::StatusOr<Rational> RationalFromJson(const Json& j);

// {"rows": R, "cols": C, "entries": [["p/q", ...], ...]}
Json ToJson(const RMatrix& m);
absl::StatusOr<RMatrix> RMatrixFromJson(const Json& j);

// {"n": int, "alpha": "p/q" (optional), "matrix": {...}}
Json ToJson(const Mechanism& m);
absl::StatusOr<Mechanism> MechanismFromJson(const Json& j);

// {"n": int, "loss": {...}, "side_info": [ints]}
Json ToJson(const ConsumerProfile& profile);
absl::StatusOr<ConsumerProfile> ConsumerProfileFromJson(const Json& j);

// Mechanism layout plus "row_domain" and "predicate_true_values"; "n" is the
// number of rows per database.
Json ToJson(const DbMechanism& m);
absl::StatusOr<DbMechanism> DbMechanismFromJson(const Json& j);

Json ToJson(const PostProcess& post);
Json ToJson(const DpVerdict& verdict);
Json ToJson(const DerivabilityReport& report);
Json ToJson(const SampleTrace& trace);
Json ToJson(const OptimalMechanismResult& result);
Json ToJson(const OptimalInteractionResult& result);
Json ToJson(const std::vector<RowPairPattern>& patterns);
Json ToJson(const ReleaseRecord& record);
Json ToJson(const ReleaseLadder& ladder, const CollusionReport& report);
Json ToJson(const DbDpVerdict& verdict);
Json ToJson(const ReductionReport& report);

}  // namespace geomech

#endif  // GEOMECH_JSON_IO_H_
