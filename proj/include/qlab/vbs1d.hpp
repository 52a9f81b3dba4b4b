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

// Valence-bond chains: the bond + projector builder, the AKLT chain, its
// reduction to a cluster chain by alternating two-outcome measurements, and
// the AKLT Hamiltonian.

#ifndef QLAB_VBS1D_HPP_
#define QLAB_VBS1D_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "qlab/hamiltonian.hpp"
#include "qlab/mps.hpp"
#include "qlab/qstate.hpp"

namespace qlab::vbs {

enum class BondKind { kSinglet, kCBond, kBond };

/// B with bond state sum_ij B_ij |i>_left |j>_right.
CMat bond_matrix(BondKind kind);
std::string to_string(BondKind kind);
BondKind bond_kind_from_string(const std::string& s);

/// Per-site projector P (d x 4). Column index 2 l + r for virtual qubits
/// l (left slot) and r (right slot).
struct BondProjectorSpec {
  BondKind bond = BondKind::kSinglet;
  CMat projector;

  /// Throws std::invalid_argument unless P P^dag = I within 1e-10.
  void validate() const;
};

/// How the two unpaired end slots are treated.
enum class BoundaryMode {
  kExposed,  // each bonded to an extra spin-1/2 site at either end
  kPlus,     // each contracted with |+>
};

/// Sites: [b0] 1..n [b_{n+1}]; the bracketed qubits exist in exposed mode.
QuditState build_vbs(int n, const BondProjectorSpec& spec,
                     BoundaryMode mode = BoundaryMode::kExposed);

/// |0~><00| + |1~><11|.
BondProjectorSpec cluster_projector_spec();
/// |0~><01| + |1~><10|.
BondProjectorSpec cluster_projector_flip_spec();
/// Rows 00, 11, 01, 10: the spin-3/2 relabeling.
BondProjectorSpec spin32_projector_spec();
/// Symmetric subspace with singlet bonds (rows m = +1, 0, -1).
BondProjectorSpec aklt_projector_spec();

/// Rows: Cartesian spin-1 states |x~>, |y~>, |z~> in the m = +1, 0, -1
/// basis. They carry the MPS labels X, Y, Z of the AKLT chain.
CMat aklt_label_basis();

/// Paulis on b0 and b_{n+1} that, with conj(label basis) on every spin,
/// map the singlet VBS onto the (X, Y, Z) MPS with free boundaries.
CMat aklt_left_boundary_map();
CMat aklt_right_boundary_map();

// ---------------------------------------------------------------------------
// Reduction to a cluster chain

enum class ReductionMeasurement { kM1, kM2 };

struct ReductionStep {
  int site = 0;  // 1-based spin site
  ReductionMeasurement measurement = ReductionMeasurement::kM1;
  bool success = false;
  double probability = 0.0;
  std::vector<std::string> kept;  // MPS labels of the outcome subspace
};

/// Local maps turning the post-measurement chain into the cluster chain:
/// one row vector for each boundary qubit, a 2 x 3 map for every surviving
/// spin and a 1 x 3 row for every failed one.
struct ReductionFrame {
  std::vector<CMat> site_maps;  // indexed like the full chain [b0, 1..n, b_{n+1}]
  std::vector<int> logical_sites;  // spin sites that carry cluster qubits

  QuditState apply(const QuditState& post) const;
};

struct ReductionResult {
  QuditState post_state;
  int cluster_length = 0;
  ReductionFrame frame;
  std::vector<ReductionStep> transcript;
  double overlap = 0.0;  // |<cluster | corrected>| / |corrected|
};

/// Chooses success (1) or failure (0) for measurement k.
class SuccessSource {
 public:
  explicit SuccessSource(Rng& rng) : rng_(&rng) {}
  explicit SuccessSource(std::vector<int> forced) : forced_(std::move(forced)) {}
  OutcomeSelector next(std::size_t k) const;

 private:
  Rng* rng_ = nullptr;
  std::vector<int> forced_;
};

/// Builds the n-site AKLT chain with exposed boundary qubits and measures
/// M1 / M2 left to right, switching only after a success. M1 keeps labels
/// {Y, Z} and fails on X; M2 keeps {Y, X} and fails on Z.
ReductionResult reduce_aklt_to_cluster(int n, const SuccessSource& outcomes);

/// Outcome-independent statistics from enumerating every branch.
struct BranchSummary {
  int n = 0;
  int branches = 0;
  double total_probability = 0.0;
  double min_overlap = 1.0;
  double min_success_probability = 1.0;
  double max_success_probability = 0.0;
  double expected_cluster_length = 0.0;
  double sites_per_qubit = 0.0;  // n / E[length]
};
BranchSummary enumerate_aklt_branches(int n);

nlohmann::json to_json(const ReductionResult& r);

// ---------------------------------------------------------------------------
// Protocol search on general MPS families

/// A candidate reduction protocol: gauge G placed on bonds (0,1), (2,3),
/// ... of the chain, measurements keeping label sets keep1 / keep2
/// (switching after success), then gauge C on bonds (L,1), (2,3), ... of
/// the surviving columns, after which every column must read {H, HZ}.
struct ProtocolCandidate {
  CMat first_gauge;
  CMat second_gauge;
  std::vector<int> keep1;
  std::vector<int> keep2;
};

struct ProtocolSearchResult {
  bool found = false;
  int candidates_tried = 0;
  ProtocolCandidate protocol;
  double min_overlap = 0.0;
};

/// Tries every candidate on every branch of an n-site chain of the family
/// with free boundaries: 24 x 24 Clifford gauges times ordered pairs of
/// two-label keep sets.
ProtocolSearchResult search_reduction_protocol(const std::vector<CMat>& family, int n);

/// Runs one candidate on one branch. Returns the overlap of the corrected
/// surviving chain with the cluster chain, or -1 if the table does not
/// reach the {H, HZ} form.
double run_protocol_branch(const std::vector<CMat>& family, const ProtocolCandidate& p,
                           const std::vector<int>& successes);

// ---------------------------------------------------------------------------
// Hamiltonian

/// Sum of S.S + (S.S)^2 / 3 over neighbouring spins, plus s.S on each end
/// pair when with_boundary (sites b0 and b_{n+1} then exist).
LocalHamiltonian aklt_hamiltonian(int n, bool with_boundary);

/// Smallest eigenvalue of a bulk term (-2/3) and of a boundary term (-1).
double aklt_bulk_term_minimum();
double aklt_boundary_term_minimum();

struct FrustrationCheck {
  double max_term_residual = 0.0;  // max ||(h_k - e_min) psi||
  double energy = 0.0;
  double ground_energy = 0.0;  // sum of term minima
};
FrustrationCheck check_frustration_free(const LocalHamiltonian& h, const QuditState& psi);

}  // namespace qlab::vbs

#endif  // QLAB_VBS1D_HPP_
