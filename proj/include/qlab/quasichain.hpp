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

// AKLT quasichains of spin-3/2 backbone sites with spin-1/2 pendants, the
// merging of two pendants into one spin-3/2 and the coupling of two chains.
//
// A chain with n backbone sites numbers them A_1 .. A_n as 0 .. n-1 and its
// pendants b_0 .. b_{n+1} as n .. 2n+1. b_0 hangs on A_1, b_i on A_i and
// b_{n+1} on A_n, so every backbone site has three virtual qubits. Backbone
// sites alternate between sublattices A and B (A_1 on A); each pendant sits
// on the sublattice opposite to its host.
//
// Only backbone sites are measured. A pendant takes its host's outcome, so
// the domain machinery of the 2D construction absorbs it into the host's
// logical qubit.

#ifndef QLAB_QUASICHAIN_HPP_
#define QLAB_QUASICHAIN_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qlab/aklt2d.hpp"
#include "qlab/graph.hpp"
#include "qlab/hamiltonian.hpp"
#include "qlab/qstate.hpp"
#include "qlab/random.hpp"

namespace qlab::quasichain {

constexpr int kMaxBackbone = 4;

struct QuasichainSpec {
  int n = 1;  // backbone sites

  int num_sites() const { return 2 * n + 2; }
  /// Site id of pendant b_i, 0 <= i <= n + 1.
  int pendant(int i) const;
  /// Backbone site of a pendant; the site itself for backbone sites.
  int host(int site) const;
  bool is_backbone(int site) const { return site < n; }

  /// Throws std::invalid_argument unless 1 <= n <= kMaxBackbone.
  void validate() const;
};

graph::SiteGraph quasichain_graph(const QuasichainSpec& spec);

/// Singlets on the edges, P_S on backbone sites, bare pendants.
QuditState build_quasichain(const QuasichainSpec& spec);

/// J (sum P^{S=3} on backbone pairs + sum P^{S=2} on backbone-pendant
/// pairs), J = 1. Terms are tagged "S3" and "S2".
LocalHamiltonian quasichain_hamiltonian(const QuasichainSpec& spec);

/// The 4 x 4 relabeling of (b1, b2) onto one spin 3/2 in the basis of
/// aklt2d::site_projector(3): |m1 m2> -> |3/2, m1 + 2 m2>, b1 the more
/// significant qubit.
CMat merge_map();

// ---------------------------------------------------------------------------
// Measurement of the backbone

/// Host of every site of a graph: a pendant names its backbone site, a
/// backbone site names itself.
using HostMap = std::vector<int>;

/// Born sampling of the POVM on backbone sites (in increasing order); every
/// pendant is then rotated into the compressed basis of its host's outcome.
aklt2d::ExactSample measure_backbone(const graph::SiteGraph& g, const HostMap& hosts,
                                     const QuditState& psi, Rng& rng);

/// The branch with the given outcomes on backbone sites (entries of pendant
/// sites are ignored). Throws std::domain_error for a zero-probability
/// branch.
aklt2d::ExactSample project_backbone(const graph::SiteGraph& g, const HostMap& hosts,
                                     const QuditState& psi,
                                     const std::vector<aklt2d::Outcome>& outcomes);

struct ChainReduction {
  aklt2d::ExactSample sample;
  aklt2d::DomainGraph domains;
  aklt2d::EncodingReport report;
  bool is_path = false;  // domain graph is a simple path
  std::optional<aklt2d::Simplified> simplified;

  nlohmann::json to_json() const;
};

/// Measures the backbone (or projects onto forced outcomes), forms the
/// logical qubits and verifies the encoded chain cluster state. With
/// simplify, non-representative sites (pendants and repeated backbone
/// sites) are measured out so each logical qubit sits on one spin 3/2.
ChainReduction reduce_quasichain_to_cluster(
    const QuasichainSpec& spec, Rng& rng,
    const std::optional<std::vector<aklt2d::Outcome>>& forced = {}, bool simplify = false);

// ---------------------------------------------------------------------------
// Coupling two chains

enum class CouplingMode { kIdentity, kLogicalCz };
std::string to_string(CouplingMode m);
CouplingMode coupling_mode_from_string(const std::string& s);

struct CoupledSystem {
  QuasichainSpec first;
  QuasichainSpec second;
  graph::SiteGraph graph;  // second chain offset by first.num_sites()
  HostMap hosts;
  int b1 = 0;  // site ids in graph
  int b2 = 0;
};

/// Two chains side by side with pendants b_i of the first and b_j of the
/// second as the coupled pair. Throws std::invalid_argument if an index
/// does not name a pendant.
CoupledSystem make_coupled(const QuasichainSpec& first, const QuasichainSpec& second,
                           std::pair<int, int> pendant_pair);

/// Product of the two chain states on the coupled graph.
QuditState build_coupled(const CoupledSystem& sys);

/// Sites of the merged system: b1 becomes the spin-3/2 site B, b2 is
/// removed. Returns the new index of each old site (-1 for b2).
std::vector<int> merged_index(const CoupledSystem& sys);

/// (b1, b2) mapped through U onto B.
QuditState merge_pendants(const CoupledSystem& sys, const QuditState& psi);

/// U (H_first + H_second) U^dag on the merged system.
LocalHamiltonian merged_hamiltonian(const CoupledSystem& sys);

/// Applies a two-qubit operation to (b1, b2) of the unmerged state.
QuditState apply_on_pair(const CoupledSystem& sys, const QuditState& psi, const CMat& op);

/// Applies U op U^dag to B of a merged state.
QuditState apply_on_merged(const CoupledSystem& sys, const QuditState& merged, const CMat& op);

struct CouplingResult {
  CouplingMode mode = CouplingMode::kIdentity;
  std::vector<aklt2d::Outcome> outcomes;
  int logical_u = 0;  // domain of b1
  int logical_v = 0;  // domain of b2
  std::array<int, 2> measured{0, 0};  // identity mode: m1, m2
  std::array<int, 2> frame{0, 0};     // Pauli on logical u, v (0 I, 1 X, 2 Y, 3 Z)
  CVec logical_before;                // decoded before the coupling
  CVec logical_after;                 // decoded and frame-corrected
  CVec target;                        // before, or CZ_uv before
  double fidelity = 0.0;
  bool ok = false;

  nlohmann::json to_json() const;
};

/// Measures both backbones, then on the compressed pendant qubits applies
/// X (x) X and either measures both in (|0> +- |1>)/sqrt2 (identity) or
/// applies CZ (logical CZ). The logical frame is found by search over
/// Pauli pairs on the two logical qubits; ok when the corrected logical
/// state matches the target with fidelity >= 1 - 1e-9. Forced measurement
/// results (m1, m2) pick the identity-mode branch.
CouplingResult couple_chains(const CoupledSystem& sys, CouplingMode mode, Rng& rng,
                             const std::optional<std::vector<aklt2d::Outcome>>& outcomes = {},
                             const std::optional<std::array<int, 2>>& forced_results = {});

}  // namespace qlab::quasichain

#endif  // QLAB_QUASICHAIN_HPP_
