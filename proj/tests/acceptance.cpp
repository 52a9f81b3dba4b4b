// Copyright 2026 The Qlab Authors
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

// Prints one PASS/FAIL line per acceptance criterion. Exit status 1 if any
// criterion fails. Usage: acceptance [seed] [id...]

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qlab/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 7;
  std::vector<int> ids;
  if (argc > 1) seed = std::stoull(argv[1]);
  for (int k = 2; k < argc; ++k) ids.push_back(std::stoi(argv[k]));
  if (ids.empty()) {
    for (int id = 1; id <= qlab::acceptance::kNumCriteria; ++id) ids.push_back(id);
  }
  int failed = 0;
  for (int id : ids) {
    const auto r = qlab::acceptance::run_criterion(id, seed);
    std::cout << r.line() << std::endl;
    failed += !r.pass;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
