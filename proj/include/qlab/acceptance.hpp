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

// The acceptance battery: twelve numbered checks with pinned tolerances
// and runtime limits, shared by the acceptance binary and `qlab suite`.

#ifndef QLAB_ACCEPTANCE_HPP_
#define QLAB_ACCEPTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qlab::acceptance {

constexpr int kNumCriteria = 12;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means none
  nlohmann::json metrics;   // measured values, excludes timings
  std::string failure;      // first failed check, empty on success

  /// "PASS  1 cluster-stabilizers (0.1 s)" or "FAIL ... : reason".
  std::string line() const;
};

/// Runs criterion id (1..12). Random draws use derive_seed(seed,
/// "acceptance", id). Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_all(std::uint64_t seed);

/// {"schema": ..., "seed": ..., "criteria": [...], "passed": n}; timings
/// are left out so equal seeds give equal bytes.
nlohmann::json summary_json(const std::vector<CriterionResult>& results, std::uint64_t seed);

}  // namespace qlab::acceptance

#endif  // QLAB_ACCEPTANCE_HPP_
