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

// The spin-5/2 tri-cluster state on honeycomb patches, its parent
// Hamiltonian and the desk-scale checks of its gap bound.
//
// Every site carries three virtual qubits joined by cbond states. Slots
// are fixed by the edge orientation: an A site uses slot 0 for its ba
// edge, slot 1 for ab and slot 2 for the vertical edge; a B site uses
// slot 0 for ab, slot 1 for ba and slot 2 for the vertical edge. The six
// physical labels 0~ ... 5~ read the slot patterns 000, 111, 100, 011,
// 010, 101 (slot 0 first).

#ifndef QLAB_TRICLUSTER_HPP_
#define QLAB_TRICLUSTER_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qlab/graph.hpp"
#include "qlab/hamiltonian.hpp"
#include "qlab/linalg.hpp"
#include "qlab/peps.hpp"
#include "qlab/qstate.hpp"

namespace qlab::tri {

constexpr int kMaxSites = 8;
constexpr int kLabels = 6;

enum class Orientation { kAB, kBA, kBOverA };
std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

/// Slot used on a site of the given sublattice by an edge of orientation o.
int slot_of(bool is_b, Orientation o);

struct PatchEdge {
  int a = 0;  // A-sublattice endpoint
  int b = 0;  // B-sublattice endpoint
  Orientation orientation = Orientation::kAB;
};

/// A honeycomb region, open or periodic.
struct Patch {
  graph::SiteGraph graph;
  std::vector<PatchEdge> edges;
  bool periodic = false;
  std::string name;

  int num_sites() const { return graph.num_vertices(); }
  bool is_b(int site) const;
  /// Index into edges of the edge joining u and v, or -1.
  int edge_index(int u, int v) const;

  /// Throws std::invalid_argument if a site uses a slot twice or an edge
  /// joins two sites of the same sublattice.
  void validate() const;
};

/// Open patch built from honeycomb brick coordinates; orientations follow
/// from the coordinates (A(x,y)-B(x,y) is ab, A(x+1,y)-B(x,y) is ba and
/// A(x,y)-B(x,y+1) is vertical).
Patch patch_from_graph(const graph::SiteGraph& g);
Patch honeycomb_patch(int rows, int cols);

/// Periodic brick lattice: ab A(x,y)-B(x,y), ba A(x+1,y)-B(x,y), vertical
/// A(x,y)-B(x+shift,y+1), all indices periodic.
Patch torus_patch(int lx, int ly, int shift);
/// torus_patch(3, 1, 1): six sites, the complete bipartite graph K33.
Patch k33_patch();
/// torus_patch(2, 2, 0): eight sites.
Patch torus_2x2_patch();

/// Induced sub-patch on the given sites (relabeled 0..k-1 in that order).
Patch sub_patch(const Patch& p, const std::vector<int>& sites);

/// "RxC" gives honeycomb_patch(R, C); "k33" and "torus2x2" give the tori.
Patch patch_from_name(const std::string& name);

/// How slots without a partner site are treated.
enum class BoundaryMode {
  kTruncated,  // slot dropped, rows restricted to the remaining slots
  kPlus,       // slot contracted with |+>
};
std::string to_string(BoundaryMode m);

/// Rows |0~> ... |5~> of the 6 x 8 site projector.
CMat tricluster_projector();
const std::vector<std::string>& label_patterns();

/// The network of a patch: bonds per edge and per-site projectors.
struct PepsSpec {
  Patch patch;
  BoundaryMode boundary = BoundaryMode::kTruncated;
  CMat bond;                                // cbond matrix
  std::vector<std::vector<int>> slots;      // present slots per site
  std::vector<CMat> projectors;             // d_s x 2^(present slots)
  std::vector<std::vector<int>> label_row;  // label -> physical row, per site

  std::vector<int> dims() const;
  /// Throws std::invalid_argument unless every site has at most three
  /// slots, every projector has orthonormal rows and interior sites have
  /// dimension 6.
  void validate() const;
};

/// Throws std::length_error above kMaxSites sites.
PepsSpec make_spec(const Patch& patch, BoundaryMode mode = BoundaryMode::kTruncated);

/// The network with the given edges contracted (all edges by default).
/// Slots of edges not in the list are left open.
peps::Network make_network(const PepsSpec& spec, const std::optional<std::vector<int>>& edges = {});

QuditState build_tricluster(const PepsSpec& spec);
QuditState build_tricluster(const Patch& patch, BoundaryMode mode = BoundaryMode::kTruncated);

// ---------------------------------------------------------------------------
// Ranges

enum class RangeSemantics {
  kOpenLegs,        // image of the region with all outgoing legs free
  kReducedDensity,  // range of the reduced density of the patch state
};

struct RangeSpace {
  std::vector<int> sites;  // Kronecker order of the basis rows
  CMat basis;              // orthonormal columns
  Orientation orientation = Orientation::kAB;
  int rank = 0;

  /// Throws std::invalid_argument unless the columns are orthonormal
  /// within 1e-10.
  void validate() const;
};

/// Orthonormal basis of the range of a region (Kronecker order of
/// region). Under kOpenLegs only the listed edges (default: all edges
/// inside the region) are contracted.
CMat region_range(const PepsSpec& spec, const std::vector<int>& region,
                  RangeSemantics semantics = RangeSemantics::kOpenLegs,
                  const std::optional<std::vector<int>>& edges = {});

/// Range of the pair (a, b) with a on A. Throws std::invalid_argument if
/// the sites are not joined by an edge of that orientation.
RangeSpace neighbor_range(const PepsSpec& spec, std::pair<int, int> pair, Orientation o,
                          RangeSemantics semantics = RangeSemantics::kOpenLegs);

/// The range of an interior pair of the infinite lattice.
RangeSpace bulk_range(Orientation o);

/// Rank of the single-site reduced density of the patch state.
int site_marginal_rank(const PepsSpec& spec, int site);

// ---------------------------------------------------------------------------
// Parent Hamiltonian

/// One projector I - S S^dag per edge on sites {a, b}, tagged by the
/// orientation. Terms of the same A site add up to the three-term sum of
/// that site.
LocalHamiltonian build_h_tricluster(const PepsSpec& spec);

/// max_k ||h_k psi||.
double max_term_residual(const LocalHamiltonian& h, const QuditState& psi);

struct UniquenessReport {
  bool holds = false;
  int region_rank = 0;
  int intersection_rank = 0;
  int internal_pairs = 0;
  double distance = 1.0;  // sin of the largest principal angle
};

/// Compares the range of a connected 3-4 site region with the
/// intersection over its internal pairs of S_ab (x) I. replaced maps an
/// edge index to a substitute pair range (Kronecker order a, b). Throws
/// std::invalid_argument for disconnected regions or fewer than 3 sites
/// and std::length_error above 4 sites.
UniquenessReport check_uniqueness_condition(const PepsSpec& spec, const std::vector<int>& region,
                                            const std::map<int, CMat>& replaced = {});

// ---------------------------------------------------------------------------
// Reduction to the cluster state

/// Pauli per site (0 = I, 1 = X, 2 = Y, 3 = Z).
using PauliFrame = std::vector<int>;

struct TriReduction {
  std::vector<int> choices;  // 0: {0~,1~}, 1: {2~,3~}, 2: {4~,5~}
  QuditState projected;      // one qubit per site: |0> = label 2k, |1> = 2k+1
  double probability = 0.0;
  PauliFrame frame;
  double overlap = 0.0;      // with the patch cluster state after the frame
};

/// Z on the partner of the slot that label pair k flips (slot 0 for k = 1,
/// slot 1 for k = 2), when that partner exists.
PauliFrame predicted_frame(const PepsSpec& spec, const std::vector<int>& choices);

/// Brute force over all Pauli products; the first frame F with
/// F projected = target up to phase, or nothing. Up to 8 qubits.
std::optional<PauliFrame> search_pauli_frame(const QuditState& projected, const QuditState& target,
                                             double tol = 1e-9);

TriReduction reduce_tricluster(const PepsSpec& spec, const QuditState& psi,
                               const std::vector<int>& choices);

// ---------------------------------------------------------------------------
// Gap bound

/// Sites joined by the ab edges; every site must lie in exactly one.
struct Block {
  int a = 0;
  int b = 0;
};
/// Throws std::invalid_argument if the patch is not block-decomposable.
std::vector<Block> ab_blocks(const Patch& p);

struct MuCheck {
  Orientation link = Orientation::kBA;
  int kernel_dim = 0;       // of the three-term sum on the 4-site path
  int range_dim = 0;        // of the path
  double mu = 0.0;          // smallest nonzero eigenvalue of the three-term sum
  double min_difference = 0.0;  // min eig(h-triple - mu_target k)
  bool ok = false;
};

/// Bulk 4-site path (block, link, block) with link kBA or kBOverA.
MuCheck check_mu(Orientation link, double mu_target = 0.5);

/// K = sum of I - Proj(open-leg range of block m + block n joined by the
/// edge) over the inter-block edges.
LocalHamiltonian build_k_operator(const PepsSpec& spec);

struct GapCheckOptions {
  bool mu = true;
  bool c = true;
  bool eta = true;
  bool gap = true;
  LanczosOptions lanczos{1000, 1e-10, 12345};
};

struct GapBoundReport {
  std::string patch;
  int blocks = 0;
  int k_terms = 0;
  std::vector<MuCheck> mu_checks;
  bool mu_ok = false;
  double k_null_residual = 0.0;
  double k_min_nonzero = 0.0;
  bool c_ok = false;
  double h_minus_k8_min = 0.0;
  bool eta_ok = false;
  double ground_energy = 0.0;
  double gap = 0.0;
  bool unique = false;
  bool gap_ok = false;

  nlohmann::json to_json() const;
};

/// Checks h-triple >= K/2 on the 4-site paths, min nonzero eig K >= 1/3,
/// H - K/8 >= 0 and the patch gap >= 1/24 (tolerance 1e-6 for iterative
/// eigenvalues, 1e-9 for the operator inequality).
GapBoundReport gap_bound_checks(const PepsSpec& spec, const GapCheckOptions& opts = {});

}  // namespace qlab::tri

#endif  // QLAB_TRICLUSTER_HPP_
