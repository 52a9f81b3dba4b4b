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

#ifndef QLAB_HAMILTONIAN_HPP_
#define QLAB_HAMILTONIAN_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "qlab/linalg.hpp"
#include "qlab/qstate.hpp"

namespace qlab {

/// One local term coeff * h on the listed sites (Kronecker order).
///
/// A term is either a dense Hermitian matrix or, when `range` is set, the
/// projector I - range * range^dag onto the complement of an orthonormal
/// range. The second form is applied in low-rank fashion.
struct HamiltonianTerm {
  std::vector<int> sites;
  CMat matrix;
  CMat range;
  double coeff = 1.0;
  std::string tag;

  bool is_complement() const { return range.size() > 0; }

  /// Dense matrix of the term including the coefficient.
  CMat dense() const;
};

class LocalHamiltonian {
 public:
  LocalHamiltonian() = default;
  explicit LocalHamiltonian(std::vector<int> dims);

  /// Adds a Hermitian term. Throws on non-Hermitian input, unknown sites or
  /// size mismatch.
  void add_term(std::vector<int> sites, CMat matrix, std::string tag = "",
                double coeff = 1.0);

  /// Adds coeff * (I - B B^dag) for an orthonormal basis B.
  void add_complement_projector(std::vector<int> sites, CMat basis,
                                std::string tag = "", double coeff = 1.0);

  /// Appends every term of other with its coefficient scaled.
  void add(const LocalHamiltonian& other, double scale = 1.0);

  const std::vector<int>& dims() const { return dims_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  /// out = H in.
  void apply(const CVec& in, CVec& out) const;

  /// (term k) in, including its coefficient.
  CVec apply_term(std::size_t k, const CVec& in) const;

  double expectation(const CVec& v) const;

  /// Dense matrix; throws if the dimension exceeds max_dim.
  CMat dense(std::size_t max_dim = 8192) const;

  MatVec matvec() const;

 private:
  struct Layout {
    std::vector<std::size_t> local;
    std::vector<std::size_t> bases;
  };
  Layout make_layout(const std::vector<int>& sites) const;
  void apply_term_add(std::size_t k, const CVec& in, CVec& out) const;

  std::vector<int> dims_;
  std::size_t dim_ = 0;
  std::vector<HamiltonianTerm> terms_;
  std::vector<Layout> layouts_;
};

struct Spectrum {
  RVec values;
  CMat vectors;
};

/// Full spectrum by dense diagonalization.
Spectrum dense_spectrum(const LocalHamiltonian& h);

/// Lowest eigenvalues with multiplicity, from a dense spectrum.
struct GroundInfo {
  double ground_energy = 0.0;
  int degeneracy = 0;
  double gap = 0.0;  // first level above the ground space minus ground energy
  CMat ground_space;
};
GroundInfo ground_info(const LocalHamiltonian& h, double degeneracy_tol = 1e-8);

}  // namespace qlab

#endif  // QLAB_HAMILTONIAN_HPP_
