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

// The spin-3/2 AKLT state on honeycomb patches and its reduction to a
// graph state by the three-outcome x/y/z measurement.
//
// A site of degree d holds d virtual qubits, one per incident edge; slot k
// belongs to the edge towards the k-th smallest neighbor and slot 0 is the
// most significant bit. Virtual qubit (v, k) is labeled "v.k" in Pauli
// strings. Interior sites (d = 3) carry spin 3/2 with the basis rows
// 000, 111, W, W-bar; boundary sites carry the symmetric space of their d
// qubits.
//
// After the measurement each site keeps a two-dimensional range, spanned by
// the all-e0 and all-e1 product states of the outcome's axis (e0 = |0>, |+>
// or |+i>). Post-measurement states are stored in that compressed form, one
// qubit per site.

#ifndef QLAB_AKLT2D_HPP_
#define QLAB_AKLT2D_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qlab/graph.hpp"
#include "qlab/pauli.hpp"
#include "qlab/peps.hpp"
#include "qlab/qstate.hpp"
#include "qlab/random.hpp"

namespace qlab::aklt2d {

constexpr int kMaxSites = 10;

enum class Outcome : int { kX = 0, kY = 1, kZ = 2 };
constexpr std::array<Outcome, 3> kOutcomes = {Outcome::kX, Outcome::kY, Outcome::kZ};

/// "a_x", "a_y", "a_z".
std::string to_string(Outcome a);
Outcome outcome_from_string(const std::string& s);

enum class Provenance { kExactBorn, kIidModel };
/// "exact-Born" or "iid-model".
std::string to_string(Provenance p);

struct OutcomeField {
  std::vector<Outcome> outcomes;  // per site
  Provenance provenance = Provenance::kIidModel;
};

// ---------------------------------------------------------------------------
// Single-site operators

/// (d+1) x 2^d rows: all zeros, all ones, then the Dicke states with
/// 1 .. d-1 excitations. For d = 3 the rows read 000, 111, W, W-bar.
CMat site_projector(int d);

/// 2^d x 2 columns: the all-e0 and all-e1 states of the outcome's axis.
CMat range_basis(Outcome a, int d);

/// sqrt((d+1)/6) times the projector onto range_basis(a, d); for d = 3 the
/// prefactor is sqrt(2/3).
CMat povm_element(Outcome a, int d = 3);

/// F_x, F_y, F_z on three qubits, indexed by Outcome.
std::array<CMat, 3> povm_elements();

/// 2 x (d+1) Kraus map from the physical site space to the compressed
/// qubit: sqrt((d+1)/6) E^dag P^dag.
CMat compressed_kraus(Outcome a, int d);

// ---------------------------------------------------------------------------
// State

/// Neighbors of v in increasing order; the index is the slot.
std::vector<int> slot_order(const graph::SiteGraph& g, int v);

/// Singlet bonds on the edges, each site mapped through the given per-site
/// projector (d_s x 2^degree).
peps::Network aklt_network(const graph::SiteGraph& g, const std::vector<CMat>& site_maps);

/// Normalized AKLT state. Throws std::length_error above kMaxSites sites and
/// std::invalid_argument if a site has no edges or more than three.
QuditState build_aklt2d(const graph::SiteGraph& g);

// ---------------------------------------------------------------------------
// Sampling

struct IidModel {
  std::array<double, 3> p{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};  // by Outcome

  /// Throws std::invalid_argument unless the entries are non-negative and
  /// sum to 1 within 1e-12.
  void validate() const;
};

/// Independent outcomes; no state.
OutcomeField sample_iid(int num_sites, const IidModel& model, Rng& rng);

struct ExactSample {
  OutcomeField field;
  QuditState post_state;     // compressed, one qubit per site
  double probability = 0.0;  // Born probability of the whole field
};

/// Sequential Born sampling with state update, site 0 first.
ExactSample sample_exact(const graph::SiteGraph& g, Rng& rng);

/// The branch of a given outcome field. Throws std::domain_error if the
/// branch has probability zero.
ExactSample project_outcomes(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes);

using BranchVisitor =
    std::function<void(const std::vector<Outcome>&, double, const QuditState&)>;

/// Visits every branch with probability above min_probability.
void for_each_branch(const graph::SiteGraph& g, const BranchVisitor& visit,
                     double min_probability = 1e-14);

struct Branch {
  std::vector<Outcome> outcomes;
  double probability = 0.0;
};
std::vector<Branch> enumerate_branches(const graph::SiteGraph& g);

/// Base-3 code of a field, site 0 least significant.
std::size_t outcome_code(const std::vector<Outcome>& outcomes);

// ---------------------------------------------------------------------------
// Domains

struct LogicalPair {
  pauli::PauliString x;
  pauli::PauliString z;
};

/// +1 on sublattice A, -1 on B; sites without a tag count as A.
int lambda(const graph::SiteGraph& g, int v);

struct DomainGraph {
  std::vector<int> domain_of;              // per site
  std::vector<std::vector<int>> domains;   // sorted sites, ordered by first site
  std::vector<Outcome> outcome;            // per domain
  std::vector<std::pair<int, int>> edges;  // c < d, odd multiplicity, sorted
  std::map<std::pair<int, int>, int> bonds;  // raw edge count, c < d
  std::vector<LogicalPair> logical;
  std::vector<std::vector<pauli::PauliString>> stabilizers;  // per domain

  int num_domains() const { return static_cast<int>(domains.size()); }
  std::vector<std::vector<int>> adjacency() const;

  /// One vertex per domain, one edge per entry of edges.
  graph::SiteGraph as_graph() const;

  nlohmann::json to_json() const;
};

/// R1: contract same-outcome edges. R2: delete edges of even multiplicity.
/// Logical operators: a_z domains X-bar = prod X, Z-bar = lambda Z on the
/// first qubit; a_x and a_y domains X-bar = prod Z, Z-bar = lambda X (or
/// lambda Y) on the first qubit. Intra-domain generators pair the first
/// qubit with every other qubit.
DomainGraph form_domains(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes);

/// Symbolic check: X-bar and Z-bar anticommute and both commute with every
/// intra-domain generator of their own domain.
bool logical_algebra_ok(const DomainGraph& dg);

// ---------------------------------------------------------------------------
// Verification

/// <psi|P|psi> for a Pauli string on virtual qubits and a compressed
/// post-measurement state over the listed sites (all sites by default).
/// Factors on sites outside the list are ignored.
cplx virtual_expectation(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes,
                         const QuditState& post, const pauli::PauliString& p,
                         const std::optional<std::vector<int>>& sites = {});

/// The product X-bar_c Z-bar_c^b prod Z-bar_nb over the odd neighbors, in
/// that order; the phase is the one the multiplication produces.
pauli::PauliString cluster_generator(const DomainGraph& dg, int c, int b);

/// Parity of the bonds from c to neighbors whose axis turns X-bar_c into
/// X-bar_c Z-bar_c (a_y neighbors of a_x and a_z domains, a_x neighbors of
/// a_y domains).
int predicted_twist(const DomainGraph& dg, int c);

struct DomainCheck {
  int domain = 0;
  double intra_min = 0.0;  // min <g> over intra-domain generators
  bool intra_ok = false;
  int twist = -1;          // b, or -1 if no generator stabilizes
  int predicted_twist = 0;
  int phase_power = 0;     // s = i^phase_power on top of cluster_generator
  std::string generator;   // s X-bar Z-bar^b prod Z-bar_nb
  bool generator_ok = false;
};

struct EncodingReport {
  bool ok = false;
  std::vector<DomainCheck> domains;
  nlohmann::json to_json() const;
};

/// Checks every intra-domain generator and, per domain, finds the sign s and
/// twist b for which s X-bar_c Z-bar_c^b prod Z-bar_nb stabilizes the
/// state (tolerance 1e-9). Throws std::invalid_argument without a post
/// state or for an iid-model field.
EncodingReport verify_encoded_cluster(const graph::SiteGraph& g, const OutcomeField& field,
                                      const std::optional<QuditState>& post);

/// Amplitudes of the logical state: logical basis state l of domain c is
/// the compressed pattern with bit l on the domain's first site and bit
/// l XOR [lambda differs] on the others. Sites of dimension 1 (removed) are
/// skipped; sites in flipped read the opposite bit. Logical qubit c is bit c
/// (little-endian). X-bar acts as logical X, Z-bar as lambda(first) Z.
CVec decode_logical(const graph::SiteGraph& g, const DomainGraph& dg, const QuditState& post,
                    const std::vector<int>& flipped = {});

struct Simplified {
  std::vector<int> representative;  // per domain, its first site
  std::vector<int> measured;        // removed sites in order
  std::vector<int> results;         // 0 for e0+e1, 1 for e0-e1
  QuditState state;                 // one qubit per domain
  EncodingReport report;            // generators restricted to representatives
};

/// Measures every non-representative site in the compressed basis
/// (|0> +- |1>)/sqrt2, corrects a minus result by Z on the representative
/// and re-checks the encoded generators with the recorded signs.
Simplified simplify_domains(const graph::SiteGraph& g, const OutcomeField& field,
                            const QuditState& post, const EncodingReport& full, Rng& rng);

// ---------------------------------------------------------------------------
// Percolation

enum class Model { kIid, kExact };
std::string to_string(Model m);
Model model_from_string(const std::string& s);

struct Ensemble {
  int width = 20;   // hexagon columns
  int height = 20;  // hexagon rows
  std::optional<graph::SiteGraph> patch;  // overrides width x height
  Model model = Model::kIid;
  IidModel iid;
  int samples = 1000;
  std::uint64_t seed = 42;
};

struct SampleStats {
  int domains = 0;
  int edges = 0;
  double largest_fraction = 0.0;  // domains in the largest component / domains
  bool spanning = false;
  bool single_domain_span = false;
  std::vector<int> degrees;       // of the domain graph
};

/// Statistics of one outcome field. Left and right boundaries are the
/// sites of smallest and largest x.
SampleStats domain_statistics(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes);

struct PercolationStats {
  std::string model;
  std::string provenance;
  int sites = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double mean_largest_fraction = 0.0;
  double ci95_half_width = 0.0;
  double spanning_probability = 0.0;
  double single_domain_span_probability = 0.0;
  double mean_domains = 0.0;
  double mean_edges = 0.0;
  std::vector<long long> degree_histogram;

  nlohmann::json to_json() const;
};

/// Sample k uses derive_seed(seed, "aklt2d-percolation", k). The exact model
/// needs a patch within kMaxSites.
PercolationStats percolation_stats(const Ensemble& e);

/// Sum over Born branches of p * largest_fraction.
double exact_mean_largest_fraction(const graph::SiteGraph& g);

/// Self-normalized importance-sampling estimate of the Born mean of
/// largest_fraction from iid draws, weights p_exact / p_iid.
double reweighted_mean_largest_fraction(const graph::SiteGraph& g, const IidModel& model,
                                        int samples, std::uint64_t seed);

}  // namespace qlab::aklt2d

#endif  // QLAB_AKLT2D_HPP_
