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

#ifndef GEOMECH_ACCEPTANCE_H_
#define GEOMECH_ACCEPTANCE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace geomech {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

// Suite names in criterion order.
const std::vector<std::string>& AcceptanceSuiteNames();

// Runs one criterion by name. A run that finishes over its time limit fails.
absl::StatusOr<CriterionResult> RunCriterion(std::string_view name);

std::vector<CriterionResult> RunAllCriteria();

// One line: "PASS [3] add-privacy (0.42s / 10s): ...".
std::string FormatCriterion(const CriterionResult& result);

}  // namespace geomech

#endif  // GEOMECH_ACCEPTANCE_H_
