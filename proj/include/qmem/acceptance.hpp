// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance suite. Shared by `qmem verify` and the ctest gate.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmem::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::vector<std::string> details;
};

struct Options {
  std::uint64_t seed = 20260415;
  int workers = 1;
  /// Criteria to run (1..8); empty runs all. Criterion 7 needs 2..6.
  std::vector<int> only;
};

/// Runs the criteria in order. Details are streamed to `log` when given.
std::vector<CriterionResult> run(const Options& options, std::ostream* log = nullptr);

/// "criterion N [name]: PASS|FAIL (x.xx s, budget y s)".
std::string summary_line(const CriterionResult& r);

}  // namespace qmem::acceptance
