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

#ifndef QLAB_LINALG_HPP_
#define QLAB_LINALG_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "qlab/types.hpp"

namespace qlab {

/// out = A in for a Hermitian operator A.
using MatVec = std::function<void(const CVec& in, CVec& out)>;

struct LanczosOptions {
  int max_iter = 400;
  // Stop when the residual bound of the lowest Ritz pair drops below tol.
  double tol = 1e-9;
  std::uint64_t seed = 12345;
};

struct LanczosResult {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lowest eigenvalue of a Hermitian operator restricted to the orthogonal
/// complement of the deflation vectors (which must be orthonormal).
///
/// Plain three-term Lanczos without reorthogonalization or basis storage;
/// loss of orthogonality only produces spurious copies of converged Ritz
/// values and does not affect the lowest one.
LanczosResult lanczos_lowest(const MatVec& op, Eigen::Index dim,
                             const std::vector<CVec>& deflate,
                             const LanczosOptions& opts = {});

/// Orthonormal basis of the column space, singular values > tol * max.
CMat orthonormal_basis(const CMat& m, double tol = 1e-10);

/// Ascending eigenvalues of a Hermitian matrix. Uses the real symmetric
/// solver when the imaginary part vanishes.
RVec hermitian_eigenvalues(const CMat& h);

/// Orthonormal basis of the eigenspace of a Hermitian matrix with
/// eigenvalue <= threshold.
CMat low_eigenspace(const CMat& h, double threshold);

/// sin of the largest principal angle between two subspaces given by
/// orthonormal bases; 1 if the dimensions differ.
double subspace_distance(const CMat& a, const CMat& b);

/// Norm of the component of the columns of `inner` outside span(outer);
/// both orthonormal. Zero iff span(inner) is contained in span(outer).
double containment_residual(const CMat& outer, const CMat& inner);

/// Orthonormal basis of the intersection of the given subspaces.
CMat subspace_intersection(const std::vector<CMat>& bases, Eigen::Index dim,
                           double tol = 1e-8);

}  // namespace qlab

#endif  // QLAB_LINALG_HPP_
