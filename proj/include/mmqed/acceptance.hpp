// Copyright 2026 The mmqed Authors
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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmqed/config.hpp"
#include "mmqed/gates.hpp"

namespace mmqed {

struct Check {
  std::string name;
  double value = 0;
  std::string expected;  // human-readable window
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  double time_limit = 0;  // s
  std::string error;      // set when the run threw

  bool passed() const;
  /// "PASS 4 landau-zener fringes (2.9 s)" followed by the check values.
  std::string line() const;
};

/// The end-to-end checks behind `mmqed validate`. Criterion 7 reuses the
/// schedule calibrated by criterion 6 (calibrating on demand if 6 was not
/// run).
class AcceptanceSuite {
 public:
  static constexpr int kCount = 8;

  explicit AcceptanceSuite(RunConfig config);

  CriterionResult run(int id);
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

  const std::optional<CalibrationResult>& calibration() const { return calibration_; }

 private:
  const CalibrationResult& calibrated();

  RunConfig config_;
  std::optional<CalibrationResult> calibration_;
};

/// JSON array of criterion results.
std::string acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace mmqed
