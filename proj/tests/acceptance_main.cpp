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

// Runs acceptance criteria 1-8 and prints one line per criterion.

#include <iostream>

#include "qmem/acceptance.hpp"

int main() {
  qmem::acceptance::Options options;
  const auto results = qmem::acceptance::run(options, &std::cout);
  bool all = true;
  std::cout << '\n';
  for (const auto& r : results) {
    std::cout << qmem::acceptance::summary_line(r) << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
