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

// Spin operators built from virtual spin-1/2 constituents. Qubit |0> is
// spin up, so row k of the symmetric isometry is the spin-n/2 state with
// m = n/2 - k.

#ifndef QLAB_SPIN_HPP_
#define QLAB_SPIN_HPP_

#include "qlab/types.hpp"

namespace qlab {

struct SpinOps {
  CMat x, y, z;

  /// S.S restricted to this representation.
  CMat casimir() const { return x * x + y * y + z * z; }
};

/// (n+1) x 2^n isometry onto the symmetric subspace of n qubits; row k is
/// the normalized Dicke state with k excitations.
CMat symmetric_isometry(int nqubits);

/// Spin operators P (sum_k sigma_k / 2) P^dag for a map P from n virtual
/// qubits onto a physical space with orthonormal rows.
SpinOps spin_ops_from_map(const CMat& p);

/// Spin-s operators in the basis m = s, s-1, ..., -s.
SpinOps spin_ops(int twice_s);

/// S_a . S_b on the Kronecker product of the two spaces.
CMat spin_dot(const SpinOps& a, const SpinOps& b);

/// Projector onto total spin J of the Kronecker product (J given as 2J).
CMat total_spin_projector(const SpinOps& a, const SpinOps& b, int twice_j);

}  // namespace qlab

#endif  // QLAB_SPIN_HPP_
