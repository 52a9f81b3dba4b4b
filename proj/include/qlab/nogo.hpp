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

// Two-body frustration-free qubit Hamiltonians built from a state's pair
// marginals, their ground spaces and the product states inside them.
//
// H_psi is the sum over pairs i < j of the projector onto the kernel of
// rho_ij. It is the smallest two-body frustration-free Hamiltonian having
// psi as a zero-energy state, so any product state in its zero space shows
// that psi is not a unique ground state of such a Hamiltonian.

#ifndef QLAB_NOGO_HPP_
#define QLAB_NOGO_HPP_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qlab/hamiltonian.hpp"
#include "qlab/qstate.hpp"
#include "qlab/random.hpp"
#include "qlab/types.hpp"

namespace qlab::nogo {

constexpr int kMinQubits = 2;
constexpr int kMaxQubits = 6;
constexpr int kMaxSearchQubits = 5;
constexpr double kGroundTol = 1e-9;     // zero-energy eigenvalue threshold
constexpr double kProductTol = 1e-7;    // energy of an accepted product state
constexpr double kSchmidtTol = 1e-6;    // second singular value of an entangled cut

// ---------------------------------------------------------------------------
// Entanglement

/// Singular values (descending) of psi across sites | complement.
RVec schmidt_values(const QuditState& psi, const std::vector<int>& sites);

/// Schmidt rank >= 2 across every bipartition.
bool genuinely_entangled(const QuditState& psi, double tol = kSchmidtTol);

/// Smallest second singular value over all bipartitions.
double min_second_schmidt(const QuditState& psi);

struct Factor {
  std::vector<int> sites;  // increasing
  CVec vec;                // over sites, little-endian
};

/// Finest product decomposition of psi: groups of sites, smallest first,
/// such that psi is the tensor product of the group vectors.
std::vector<Factor> product_factors(const QuditState& psi, double tol = kSchmidtTol);

// ---------------------------------------------------------------------------
// H_psi and ground spaces

/// Ranks of rho_ij for i < j in lexicographic order.
std::vector<std::pair<std::pair<int, int>, int>> pair_ranks(const QuditState& psi,
                                                            double rank_tol = kRankTol);

/// Sum of kernel projectors of the pair marginals, tagged "i,j". Pairs
/// with full-rank marginals contribute no term. Throws
/// std::invalid_argument unless psi has 2..6 qubits.
LocalHamiltonian build_h_psi(const QuditState& psi, double rank_tol = kRankTol);

struct GroundSpace {
  CMat basis;  // orthonormal columns
  double threshold = kGroundTol;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Zero-energy eigenspace (eigenvalues <= threshold) by full
/// diagonalization.
GroundSpace ground_space(const LocalHamiltonian& h, double threshold = kGroundTol);

// ---------------------------------------------------------------------------
// SLOCC

/// L psi normalized, L = L_0 (x) ... (x) L_{n-1}. Throws
/// std::invalid_argument for |det L_k| <= 1e-10 or a size mismatch.
QuditState slocc_transform(const QuditState& psi, const std::vector<CMat>& ls);

/// sum (L_i (x) L_j)^dag term (L_i (x) L_j) over the terms of h.
LocalHamiltonian conjugate_hamiltonian(const LocalHamiltonian& h, const std::vector<CMat>& ls);

// ---------------------------------------------------------------------------
// Isometry reduction of a rank-2 pair

struct Rank2Reduction {
  std::pair<int, int> pair;  // i < j
  CMat isometry;             // 4 x 2, columns span the range of rho_ij
  QuditState reduced;        // V^dag psi on n - 1 qubits
  LocalHamiltonian reduced_h;  // V^dag H_psi V

  /// Site of the reduced system carrying each original site (i and j both
  /// map to the encoded qubit).
  std::vector<int> site_map;
};

/// Encodes qubits i, j into one qubit placed at i; j is removed and later
/// sites shift down. The isometry is gauge-fixed by row reduction so that
/// computational-basis range vectors are kept. Throws std::invalid_argument
/// if rank(rho_ij) != 2.
Rank2Reduction rank2_pair_reduce(const QuditState& psi, std::pair<int, int> pair,
                                 double rank_tol = kRankTol);

/// V applied to the encoded qubit of a reduced-system vector.
CVec lift_reduced(const Rank2Reduction& r, const CVec& reduced_vec);

// ---------------------------------------------------------------------------
// Product ground states

enum class SearchStrategy { kGridPolish, kRank2Reduction };
std::string to_string(SearchStrategy s);
SearchStrategy search_strategy_from_string(const std::string& s);

struct SearchOptions {
  int budget = 10000;  // single-site updates over all seeds
  double tol = kProductTol;
};

/// The twelve single-qubit states whose Bloch vectors are the vertices of
/// an icosahedron.
std::vector<CVec> bloch_grid();

struct ProductSearch {
  bool found = false;
  SearchStrategy strategy = SearchStrategy::kGridPolish;
  CVec state;                  // full state, empty if not found
  std::vector<Factor> factors;
  double energy = 0.0;         // best energy reached
  int iterations = 0;
  int seeds = 0;
  std::vector<std::pair<int, int>> reduced_pairs;  // original site ids
  std::string diagnostics;

  /// Largest factor size (1 for a product of single qubits).
  int max_factor_size() const;
  nlohmann::json to_json() const;
};

/// Product of single-qubit states with energy <= tol: seeds from the
/// Bloch grid (homogeneous seeds first, then random grid combinations),
/// each polished by exact single-site minimization. Throws
/// std::invalid_argument for more than five qubits.
ProductSearch find_product_ground_state(const LocalHamiltonian& h, Rng& rng,
                                        const SearchOptions& opts = {});

/// Searches the zero space of H_psi. kRank2Reduction encodes rank-2 pairs
/// one at a time, searches the reduced problem and lifts the result, so
/// the state may keep two-qubit factors; the energy is always measured
/// against H_psi of the original state.
ProductSearch find_product_ground_state(const QuditState& psi, SearchStrategy strategy,
                                        Rng& rng, const SearchOptions& opts = {});

// ---------------------------------------------------------------------------
// Test states and reports

/// Random genuinely entangled n-qubit states drawn from a mixture:
/// "haar", "mps" (open chain, bond dimension 2), "ghz-slocc", "w-slocc".
struct TestState {
  QuditState psi;
  std::string family;
};

QuditState ghz_state(int n);
QuditState w_state(int n);
TestState random_entangled_state(int n, Rng& rng);

/// Random two-body frustration-free projector Hamiltonian with psi in its
/// zero space: each term projects onto a random subspace of ker rho_ij.
LocalHamiltonian random_compatible_hamiltonian(const QuditState& psi, Rng& rng);

struct NogoReport {
  int n = 0;
  bool genuinely_entangled = false;
  double min_second_schmidt = 0.0;
  std::vector<std::pair<std::pair<int, int>, int>> pair_ranks;
  double psi_energy = 0.0;
  int ground_dim = 0;
  ProductSearch search;
  bool ok = false;  // ground_dim >= 2 (when entangled) and search found

  nlohmann::json to_json() const;
};

/// Builds H_psi, its ground space, and a product ground state (grid
/// search first, isometry reduction as fallback).
NogoReport check_nogo(const QuditState& psi, Rng& rng, const SearchOptions& opts = {});

/// {"n": n, "amplitudes": [[re, im], ...]} with little-endian indices.
QuditState state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const QuditState& psi);

}  // namespace qlab::nogo

#endif  // QLAB_NOGO_HPP_
