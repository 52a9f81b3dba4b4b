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

#ifndef QLAB_RANDOM_HPP_
#define QLAB_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

#include "qlab/types.hpp"

namespace qlab {

/// One step of the SplitMix64 mixer.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of an independent stream from a master seed.
///
/// The task name is hashed with FNV-1a and mixed with the master seed and
/// the index through SplitMix64. Streams are keyed by (name, index), so
/// adding a new task never shifts the seeds of existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view task,
                          std::uint64_t index = 0);

/// Deterministic random stream. Conversions to doubles and normals are
/// done here rather than through <random> distributions so the same seed
/// gives the same numbers with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n);

  /// Standard normal sample (Box-Muller).
  double normal();

  /// Complex number with independent standard normal parts.
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// Haar-random unit vector of dimension dim.
CVec random_state_vector(Eigen::Index dim, Rng& rng);

/// Haar-random unitary of dimension dim.
CMat random_unitary(Eigen::Index dim, Rng& rng);

/// Matrix with independent complex normal entries.
CMat random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace qlab

#endif  // QLAB_RANDOM_HPP_
