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

// Exact contraction of small projected-entangled-pair networks.
//
// Each site owns a few virtual qubits ("slots"). Pairs of slots carry a
// two-qubit bond state, the remaining slots are capped with a vector or
// left open, and every site maps its slots to a physical index through a
// projector whose column index reads slot 0 as the most significant bit.

#ifndef QLAB_PEPS_HPP_
#define QLAB_PEPS_HPP_

#include <map>
#include <utility>
#include <vector>

#include "qlab/qstate.hpp"

namespace qlab::peps {

struct SlotRef {
  int site = 0;
  int slot = 0;

  bool operator<(const SlotRef& o) const {
    return site != o.site ? site < o.site : slot < o.slot;
  }
  bool operator==(const SlotRef& o) const { return site == o.site && slot == o.slot; }
};

/// Bond state sum_ij matrix(i, j) |i>_a |j>_b.
struct Bond {
  SlotRef a;
  SlotRef b;
  CMat matrix;
};

struct Network {
  std::vector<CMat> projectors;  // site s: d_s x 2^(number of slots)
  std::vector<Bond> bonds;
  std::map<SlotRef, CVec> caps;  // unbonded slots contracted with a vector

  int num_sites() const { return static_cast<int>(projectors.size()); }
  int num_slots(int site) const;

  /// Throws std::invalid_argument on malformed projectors, slots used
  /// twice or bonds within one site.
  void validate() const;
};

/// Unnormalized contraction. Rows run over the physical indices (site 0
/// fastest); columns run over the open slots (first open slot fastest).
struct Contraction {
  std::vector<int> phys_dims;
  std::vector<SlotRef> open_slots;  // sorted by site, then slot
  CMat amplitudes;
};

/// Contracts the whole network. Throws std::length_error if an
/// intermediate tensor exceeds max_entries.
Contraction contract(const Network& net, std::size_t max_entries = std::size_t{1} << 24);

/// Normalized state of a network without open slots.
QuditState contract_state(const Network& net);

/// Raw tensor leg permutation: leg k of the result is leg order[k] of the
/// input. Both tensors are little-endian.
CVec permute_legs(const std::vector<int>& dims, const CVec& vec, const std::vector<int>& order);

}  // namespace qlab::peps

#endif  // QLAB_PEPS_HPP_
