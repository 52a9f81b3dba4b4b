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

#ifndef QLAB_CLUSTER_HPP_
#define QLAB_CLUSTER_HPP_

#include <utility>
#include <vector>

#include "qlab/graph.hpp"
#include "qlab/hamiltonian.hpp"
#include "qlab/pauli.hpp"
#include "qlab/qstate.hpp"

namespace qlab {

/// |0>^n, then H on every vertex, then CZ on every edge. Throws
/// std::invalid_argument on non-qubit vertices.
QuditState build_cluster_state(const graph::SiteGraph& g);

/// Same construction with the CZ gates applied in the given edge order.
QuditState build_cluster_state(const graph::SiteGraph& g,
                               const std::vector<std::pair<int, int>>& edge_order);

/// One generator X_j prod_{k in nb(j)} Z_k per vertex, labels "0", "1", ...
pauli::StabilizerSet cluster_stabilizer_generators(const graph::SiteGraph& g);

/// Matrix of a Pauli string on the listed qubit sites, Kronecker order.
CMat pauli_matrix(const pauli::PauliString& p, const std::vector<std::string>& labels);

/// H_C = - sum_j X_j prod_{k in nb(j)} Z_k with (1 + deg)-body terms.
LocalHamiltonian cluster_hamiltonian(const graph::SiteGraph& g);

/// Ground-state certificate of a state for a Hamiltonian.
struct GroundCheck {
  double energy = 0.0;         // <psi|H|psi>
  double residual = 0.0;       // ||(H - energy) psi||
  double next_level = 0.0;     // lowest eigenvalue on the complement of psi
  double gap = 0.0;            // next_level - energy
  bool converged = false;
};

/// Computes the energy of psi and the lowest level orthogonal to it, by
/// dense diagonalization for small spaces and Lanczos otherwise.
GroundCheck check_ground_state(const LocalHamiltonian& h, const QuditState& psi);

}  // namespace qlab

#endif  // QLAB_CLUSTER_HPP_
