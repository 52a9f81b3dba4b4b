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

#include "qlab/spin.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qlab/gates.hpp"

namespace qlab {

CMat symmetric_isometry(int nqubits) {
  if (nqubits < 1) throw std::invalid_argument("need at least one qubit");
  const int dim = 1 << nqubits;
  CMat p = CMat::Zero(nqubits + 1, dim);
  for (int b = 0; b < dim; ++b) p(std::popcount(static_cast<unsigned>(b)), b) = 1.0;
  for (int k = 0; k <= nqubits; ++k) p.row(k) /= p.row(k).norm();
  return p;
}

SpinOps spin_ops_from_map(const CMat& p) {
  const auto cols = p.cols();
  int n = 0;
  while ((Eigen::Index{1} << n) < cols) ++n;
  if ((Eigen::Index{1} << n) != cols) {
    throw std::invalid_argument("map columns must be a power of two");
  }
  SpinOps v{CMat::Zero(cols, cols), CMat::Zero(cols, cols),
            CMat::Zero(cols, cols)};
  for (int q = 0; q < n; ++q) {
    const CMat left = CMat::Identity(Eigen::Index{1} << q, Eigen::Index{1} << q);
    const CMat right = CMat::Identity(Eigen::Index{1} << (n - q - 1),
                                      Eigen::Index{1} << (n - q - 1));
    v.x += gates::kron(gates::kron(left, gates::X()), right) / 2.0;
    v.y += gates::kron(gates::kron(left, gates::Y()), right) / 2.0;
    v.z += gates::kron(gates::kron(left, gates::Z()), right) / 2.0;
  }
  return SpinOps{p * v.x * p.adjoint(), p * v.y * p.adjoint(),
                 p * v.z * p.adjoint()};
}

SpinOps spin_ops(int twice_s) {
  if (twice_s < 1) throw std::invalid_argument("spin must be positive");
  return spin_ops_from_map(symmetric_isometry(twice_s));
}

CMat spin_dot(const SpinOps& a, const SpinOps& b) {
  return gates::kron(a.x, b.x) + gates::kron(a.y, b.y) + gates::kron(a.z, b.z);
}

CMat total_spin_projector(const SpinOps& a, const SpinOps& b, int twice_j) {
  const CMat ia = CMat::Identity(a.x.rows(), a.x.cols());
  const CMat ib = CMat::Identity(b.x.rows(), b.x.cols());
  const CMat tx = gates::kron(a.x, ib) + gates::kron(ia, b.x);
  const CMat ty = gates::kron(a.y, ib) + gates::kron(ia, b.y);
  const CMat tz = gates::kron(a.z, ib) + gates::kron(ia, b.z);
  const CMat s2 = tx * tx + ty * ty + tz * tz;
  const double j = twice_j / 2.0;
  const double target = j * (j + 1.0);
  Eigen::SelfAdjointEigenSolver<CMat> es(s2);
  CMat proj = CMat::Zero(s2.rows(), s2.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - target) < 1e-8) {
      proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  return proj;
}

}  // namespace qlab
