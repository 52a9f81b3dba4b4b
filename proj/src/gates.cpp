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

#include "qlab/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qlab::gates {

CMat I2() { return CMat::Identity(2, 2); }

CMat X() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat Y() {
  CMat m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMat Z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMat H() {
  CMat m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

CMat S() {
  CMat m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

CMat RX(double theta) {
  return std::cos(theta / 2) * I2() - kI * std::sin(theta / 2) * X();
}

CMat RY(double theta) {
  return std::cos(theta / 2) * I2() - kI * std::sin(theta / 2) * Y();
}

CMat RZ(double theta) {
  return std::cos(theta / 2) * I2() - kI * std::sin(theta / 2) * Z();
}

CMat HZ(double theta) { return H() * RZ(theta); }

CMat CNOT() {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

CMat CZ() {
  CMat m = CMat::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

CVec ket0() {
  CVec v(2);
  v << 1, 0;
  return v;
}

CVec ket1() {
  CVec v(2);
  v << 0, 1;
  return v;
}

CVec ket_plus() { return (ket0() + ket1()) / std::sqrt(2.0); }

CVec ket_minus() { return (ket0() - ket1()) / std::sqrt(2.0); }

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat kron_all(std::initializer_list<CMat> factors) {
  CMat out = CMat::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMat pauli(int index) {
  switch (index) {
    case 0:
      return I2();
    case 1:
      return X();
    case 2:
      return Y();
    case 3:
      return Z();
    default:
      throw std::out_of_range("Pauli index must be 0..3");
  }
}

bool is_unitary(const CMat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMat::Identity(u.rows(), u.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool equal_up_to_phase(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const cplx ip = (b.adjoint() * a).trace();
  if (std::abs(ip) < 1e-300) return a.norm() <= tol && b.norm() <= tol;
  const cplx phase = ip / std::abs(ip);
  return (a - phase * b).norm() <= tol;
}

std::vector<CMat> clifford_group() {
  std::vector<CMat> group{I2()};
  const CMat gens[2] = {H(), S()};
  for (std::size_t k = 0; k < group.size(); ++k) {
    for (const CMat& g : gens) {
      const CMat c = g * group[k];
      bool seen = false;
      for (const CMat& e : group) seen = seen || equal_up_to_phase(c, e, 1e-9);
      if (!seen) group.push_back(c);
    }
  }
  return group;
}

}  // namespace qlab::gates
