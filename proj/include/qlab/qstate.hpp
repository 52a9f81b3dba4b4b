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

// Dense statevectors over sites of mixed dimension.
//
// Index convention: the amplitude index is little-endian, site 0 varies
// fastest, so index = sum_s digit_s * prod_{t<s} dims[t].
//
// Operators acting on a list of sites are written in Kronecker order of that
// list: the first listed site is the most significant factor, so
// kron(U, V) applied to sites {a, b} acts with U on a and V on b. Reduced
// density matrices use the same order for their kept sites.

#ifndef QLAB_QSTATE_HPP_
#define QLAB_QSTATE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "qlab/random.hpp"
#include "qlab/types.hpp"

namespace qlab {

/// Product of site dimensions, checked against the desk-scale cap.
std::size_t total_dimension(const std::vector<int>& dims);

/// Little-endian strides of the given dimensions.
std::vector<std::size_t> strides_of(const std::vector<int>& dims);

/// A normalized dense state of qudits.
class QuditState {
 public:
  QuditState() = default;

  /// The all-zero basis state |0...0>.
  explicit QuditState(std::vector<int> dims);

  /// State with the given amplitudes, normalized on construction.
  QuditState(std::vector<int> dims, CVec amps);

  static QuditState basis(std::vector<int> dims,
                          const std::vector<int>& digits);

  /// Tensor product of single-site vectors, factor k on site k.
  static QuditState product(const std::vector<CVec>& factors);

  const std::vector<int>& dims() const { return dims_; }
  int num_sites() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_.at(site); }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  std::size_t stride(int site) const { return strides_.at(site); }
  const CVec& amps() const { return amps_; }

  cplx amplitude(const std::vector<int>& digits) const;
  std::size_t index_of(const std::vector<int>& digits) const;
  std::vector<int> digits_of(std::size_t index) const;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  CVec amps_;
};

/// Applies a square operator to the listed sites of a raw amplitude vector.
void apply_local_inplace(const std::vector<int>& dims, CVec& vec,
                         const std::vector<int>& sites, const CMat& op);

/// Applies a d' x d map to one site; the site dimension becomes d'.
/// Returns the new vector and updates dims.
CVec apply_site_map(std::vector<int>& dims, const CVec& vec, int site,
                    const CMat& map);

/// Applies a unitary gate. Throws std::invalid_argument on dimension
/// mismatch or repeated sites.
QuditState apply_gate(const QuditState& state, const std::vector<int>& sites,
                      const CMat& gate);

/// Applies a (not necessarily unitary) operator and renormalizes.
/// Throws std::domain_error if the result vanishes.
QuditState apply_operator(const QuditState& state,
                          const std::vector<int>& sites, const CMat& op);

/// Applies a rectangular map to one site and renormalizes. Sites that end
/// with dimension 1 are kept; use drop_unit_sites to remove them.
QuditState apply_map(const QuditState& state, int site, const CMat& map);

/// Removes every site of dimension 1.
QuditState drop_unit_sites(const QuditState& state);

/// Tensor product; the sites of b follow those of a.
QuditState tensor(const QuditState& a, const QuditState& b);

/// Reorders sites: site k of the result is site order[k] of the input.
QuditState permute_sites(const QuditState& state, const std::vector<int>& order);

/// Inserts the single-site vector v as a new site at position pos.
QuditState insert_site(const QuditState& state, int pos, const CVec& v);

/// <a|b>. Throws on dimension mismatch.
cplx inner(const QuditState& a, const QuditState& b);

/// |<a|b>|.
double fidelity(const QuditState& a, const QuditState& b);

/// True iff |<a|b>| >= 1 - tol.
bool equal_up_to_global_phase(const QuditState& a, const QuditState& b,
                              double tol = kCompareTol);

/// <psi| op |psi> for an operator on the listed sites.
cplx expectation(const QuditState& state, const std::vector<int>& sites,
                 const CMat& op);

/// Either a random stream or a forced outcome for measurements.
class OutcomeSelector {
 public:
  OutcomeSelector(Rng& rng) : rng_(&rng) {}  // NOLINT(runtime/explicit)
  OutcomeSelector(int forced) : forced_(forced) {}  // NOLINT(runtime/explicit)

  bool is_forced() const { return forced_.has_value(); }
  int forced() const { return *forced_; }
  Rng& rng() const { return *rng_; }

 private:
  Rng* rng_ = nullptr;
  std::optional<int> forced_;
};

struct MeasureResult {
  int outcome = 0;
  double probability = 0.0;
  std::vector<double> probabilities;
  QuditState post_state;
};

/// Measures one site with operators {P_k}, sum P_k^dag P_k = I.
///
/// Each P_k is a square operator on the site. The outcome is sampled by the
/// Born rule or forced. Throws std::invalid_argument if the set is not
/// complete within 1e-10 and std::domain_error if a forced outcome has
/// probability <= 1e-12.
MeasureResult measure(const QuditState& state, int site,
                      const std::vector<CMat>& projectors,
                      const OutcomeSelector& selector);

/// Born probabilities of every outcome without sampling.
std::vector<double> outcome_probabilities(const QuditState& state, int site,
                                          const std::vector<CMat>& projectors);

/// Computational-basis projectors of a d-level site.
std::vector<CMat> basis_projectors(int d);

struct DensityMatrix {
  std::vector<int> dims;
  CMat rho;
};

/// Partial trace onto keep_sites, in Kronecker order of that list.
DensityMatrix reduced_density(const QuditState& state,
                              const std::vector<int>& keep_sites);

/// Checks Hermiticity, positivity and unit trace; throws on failure.
void validate_density(const DensityMatrix& rho);

struct RangeResult {
  CMat projector;
  CMat basis;  // orthonormal columns
  int rank = 0;
};

/// Projector onto the eigenvectors of rho with eigenvalue > rank_tol.
RangeResult range_projector(const DensityMatrix& rho, double rank_tol = kRankTol);

}  // namespace qlab

#endif  // QLAB_QSTATE_HPP_
