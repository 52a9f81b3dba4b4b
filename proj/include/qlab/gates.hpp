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

// Standard qubit gates and kets. Two-qubit matrices use the textbook
// basis order |00>, |01>, |10>, |11> with the first qubit most significant,
// which matches the Kronecker convention of apply_gate.

#ifndef QLAB_GATES_HPP_
#define QLAB_GATES_HPP_

#include <initializer_list>
#include <vector>

#include "qlab/types.hpp"

namespace qlab::gates {

CMat I2();
CMat X();
CMat Y();
CMat Z();
CMat H();
CMat S();

/// exp(-i theta X / 2), and likewise for Y and Z.
CMat RX(double theta);
CMat RY(double theta);
CMat RZ(double theta);

/// H * RZ(theta), the operation realized by one measurement step.
CMat HZ(double theta);

/// Control on the first qubit.
CMat CNOT();
CMat CZ();

CVec ket0();
CVec ket1();
CVec ket_plus();
CVec ket_minus();

CMat kron(const CMat& a, const CMat& b);
CMat kron_all(std::initializer_list<CMat> factors);
CVec kron_vec(const CVec& a, const CVec& b);

/// Pauli matrix by index: 0 = I, 1 = X, 2 = Y, 3 = Z.
CMat pauli(int index);

bool is_unitary(const CMat& u, double tol = kConstructTol);

/// The 24 single-qubit Clifford gates modulo global phase, generated from
/// H and S; the identity comes first.
std::vector<CMat> clifford_group();

/// True if a = c b for some unit-modulus c.
bool equal_up_to_phase(const CMat& a, const CMat& b, double tol = kCompareTol);

}  // namespace qlab::gates

#endif  // QLAB_GATES_HPP_
