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

// End-to-end acceptance run on the shipped device profile. One PASS/FAIL
// line per criterion; exit status is nonzero if any fails.

#include <exception>
#include <iostream>

#include "mmqed/acceptance.hpp"
#include "mmqed/config.hpp"
#include "mmqed/parallel.hpp"

int main() {
  try {
    const mmqed::RunConfig config = mmqed::load_config(std::string(MMQED_CONFIG_DIR) + "/reference-device.json");
    mmqed::set_default_threads(config.threads);
    std::cout << "config " << mmqed::config_hash(config) << "\n" << std::flush;
    mmqed::AcceptanceSuite suite(config);
    int failed = 0;
    suite.run_all([&](const mmqed::CriterionResult& r) {
      std::cout << r.line() << "\n" << std::flush;
      if (!r.passed()) ++failed;
    });
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance run aborted: " << e.what() << "\n";
    return 2;
  }
}
