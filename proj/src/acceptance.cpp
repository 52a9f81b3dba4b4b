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

#include "qlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "qlab/aklt2d.hpp"
#include "qlab/cluster.hpp"
#include "qlab/gates.hpp"
#include "qlab/graph.hpp"
#include "qlab/hamiltonian.hpp"
#include "qlab/linalg.hpp"
#include "qlab/mbqc.hpp"
#include "qlab/mps.hpp"
#include "qlab/nogo.hpp"
#include "qlab/pauli.hpp"
#include "qlab/quasichain.hpp"
#include "qlab/random.hpp"
#include "qlab/tricluster.hpp"
#include "qlab/vbs1d.hpp"

namespace qlab::acceptance {

namespace {

// Pinned tolerances.
constexpr double kStabilizerTol = 1e-10;
constexpr double kGapFloor = 1e-4;
constexpr double kFidelityTol = 1e-9;
constexpr double kStateTol = 1e-10;
constexpr double kProbTol = 1e-9;
constexpr double kTermTol = 1e-9;
constexpr double kPovmTol = 1e-12;
constexpr double kMergeTol = 1e-12;
constexpr double kAngleTol = 1e-8;

// Collects the outcome of individual checks within one criterion.
class Checks {
 public:
  explicit Checks(CriterionResult& r) : r_(r) {}

  void expect(bool ok, const std::string& what) {
    if (!ok && r_.failure.empty()) r_.failure = what;
  }
  void metric(const std::string& key, const nlohmann::json& value) { r_.metrics[key] = value; }

 private:
  CriterionResult& r_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// --------------------------------------------------------------------------

void cluster_stabilizers(Checks& c, Rng& rng) {
  const graph::SiteGraph chain3 = graph::chain(3);
  const QuditState s = build_cluster_state(chain3);
  const auto gens = cluster_stabilizer_generators(chain3);
  const auto map = pauli::index_labels(3);
  double worst = 0.0;
  for (const auto& g : gens.generators()) worst = std::max(worst, pauli::stabilizer_residual(g, s, map));
  c.expect(gens.size() == 3, "chain(3) has three generators");
  c.expect(worst <= kStabilizerTol, "chain(3) residual " + fmt(worst));
  c.metric("chain3_max_residual", worst);
  double worst_random = 0.0;
  for (int t = 0; t < 20; ++t) {
    const graph::SiteGraph g = graph::random_graph(2 + static_cast<int>(rng.uniform_int(9)), 0.4, rng);
    const QuditState psi = build_cluster_state(g);
    const auto m = pauli::index_labels(g.num_vertices());
    const auto set = cluster_stabilizer_generators(g);
    for (const auto& p : set.generators()) {
      worst_random = std::max(worst_random, pauli::stabilizer_residual(p, psi, m));
    }
  }
  c.expect(worst_random <= kStabilizerTol, "random graph residual " + fmt(worst_random));
  c.metric("random_graphs", 20);
  c.metric("random_max_residual", worst_random);
}

void cluster_hamiltonian_check(Checks& c, Rng& rng) {
  std::vector<graph::SiteGraph> graphs{graph::chain(12), graph::square_patch(3, 4),
                                       graph::honeycomb_patch(1, 2)};
  for (int t = 0; t < 5; ++t) graphs.push_back(graph::random_graph(6 + t, 0.35, rng));
  double min_gap = 1e300;
  for (const auto& g : graphs) {
    const GroundCheck gc = check_ground_state(cluster_hamiltonian(g), build_cluster_state(g));
    c.expect(std::abs(gc.energy + g.num_vertices()) <= kStateTol,
             "energy of n=" + std::to_string(g.num_vertices()));
    c.expect(gc.residual <= kStateTol, "eigen residual");
    min_gap = std::min(min_gap, gc.gap);
  }
  c.expect(min_gap > kGapFloor, "gap " + fmt(min_gap));
  c.metric("graphs", graphs.size());
  c.metric("min_gap", min_gap);
}

void mbqc_determinism(Checks& c, Rng& rng) {
  using namespace mbqc;
  const std::vector<double> angles{0.4, -1.3};
  const QuditState psi({2}, random_state_vector(2, rng));
  const QuditState ideal = apply_gate(psi, {0}, gates::HZ(angles[1]) * gates::HZ(angles[0]));
  double worst = 1.0;
  for (int mask = 0; mask < 4; ++mask) {
    const auto r = simulate_wire(angles, psi, OutcomeSource(std::vector<int>{mask & 1, mask >> 1}));
    worst = std::min(worst, fidelity(r.frame.correct(r.output), ideal));
  }
  c.expect(worst >= 1 - kFidelityTol, "wire fidelity " + fmt(worst));
  c.metric("wire_branches", 4);
  const MeasurementPattern p = two_qubit_pattern(0.3, 0.5, -0.2, 1.4);
  double worst2 = 1.0;
  for (int t = 0; t < 3; ++t) {
    const QuditState in({2, 2}, random_state_vector(4, rng));
    worst2 = std::min(worst2, min_branch_fidelity(p, *p.circuit, in));
  }
  c.expect(worst2 >= 1 - kFidelityTol, "two-qubit pattern fidelity " + fmt(worst2));
  c.metric("two_qubit_branches", 16);
  c.metric("min_fidelity", std::min(worst, worst2));
}

void mps_identities(Checks& c, Rng& rng) {
  for (int n = 1; n <= 8; ++n) {
    QuditState s = mps::mps_to_state(mps::cluster_mps(n));
    for (int j = 0; j < n; ++j) s = apply_gate(s, {j}, mps::cluster_mps_relabel());
    c.expect(equal_up_to_global_phase(s, build_cluster_state(graph::chain(n)), kStateTol),
             "cluster MPS n=" + std::to_string(n));
  }
  // (X, Y, Z) with Y inserted on the bond, then diagonal basis unitaries,
  // reads (Z, I, X) on both columns.
  const std::vector<std::string> xyz{"X", "Y", "Z"};
  auto t = mps::Tabular::from_mps(mps::with_free_boundaries(2, mps::aklt_matrices()), xyz);
  t.gauge_insert(0, gates::Y());
  const cplx i(0, 1);
  CMat u1 = CMat::Zero(3, 3), u0 = CMat::Zero(3, 3);
  u1.diagonal() << -i, 1, i;
  u0.diagonal() << i, 1, -i;
  c.expect(gates::is_unitary(u0) && gates::is_unitary(u1), "relabeling is unitary");
  t.basis_mix(1, u1);
  t.basis_mix(0, u0);
  double dev = 0.0;
  for (int k = 0; k < 2; ++k) {
    const auto m = t.site_matrices(k);
    dev = std::max({dev, (m[0] - gates::Z()).norm(), (m[1] - gates::I2()).norm(),
                    (m[2] - gates::X()).norm()});
  }
  const QuditState zix =
      mps::mps_to_state(mps::with_free_boundaries(2, {gates::Z(), gates::I2(), gates::X()}));
  c.expect(dev <= kStateTol, "(Z, I, X) columns");
  c.expect(equal_up_to_global_phase(t.to_state(), zix, kStateTol), "(Z, I, X) state");
  c.metric("relabel_deviation", dev);
  // Random gauges leave the state unchanged.
  const auto m4 = mps::with_free_boundaries(4, mps::aklt_matrices());
  auto g = mps::Tabular::from_mps(m4, xyz);
  for (int k = -1; k < 4; ++k) g.gauge_insert(k, random_complex_matrix(2, 2, rng));
  const double gauge_dev = (g.to_state().amps() - mps::mps_to_state(m4).amps()).norm();
  c.expect(gauge_dev <= kStateTol, "gauge deviation " + fmt(gauge_dev));
  c.metric("gauge_deviation_below_tol", gauge_dev <= kStateTol);
}

void aklt_reduction(Checks& c, Rng&) {
  nlohmann::json per_n = nlohmann::json::array();
  for (int n = 1; n <= 5; ++n) {
    const auto s = vbs::enumerate_aklt_branches(n);
    c.expect(s.branches == (1 << n), "branch count");
    c.expect(std::abs(s.total_probability - 1.0) <= kProbTol, "total probability");
    c.expect(s.min_overlap >= 1 - kFidelityTol, "overlap n=" + std::to_string(n));
    c.expect(std::abs(s.min_success_probability - 2.0 / 3) <= kProbTol &&
                 std::abs(s.max_success_probability - 2.0 / 3) <= kProbTol,
             "success probability");
    c.expect(std::abs(s.sites_per_qubit - 1.5) <= kProbTol, "sites per qubit");
    per_n.push_back({{"n", n}, {"branches", s.branches}, {"sites_per_qubit", s.sites_per_qubit}});
  }
  c.metric("chains", per_n);
  c.metric("success_probability", 2.0 / 3);
}

void aklt_hamiltonian_check(Checks& c, Rng&) {
  double worst = 0.0, min_gap = 1e300;
  for (int n = 1; n <= 4; ++n) {
    const QuditState psi = vbs::build_vbs(n, vbs::aklt_projector_spec());
    const LocalHamiltonian h = vbs::aklt_hamiltonian(n, true);
    const auto ff = vbs::check_frustration_free(h, psi);
    worst = std::max(worst, ff.max_term_residual);
    const GroundInfo gi = ground_info(h);
    c.expect(gi.degeneracy == 1, "unique ground state n=" + std::to_string(n));
    c.expect(std::abs(psi.amps().dot(gi.ground_space.col(0))) >= 1 - kFidelityTol,
             "ground state is the VBS state");
    min_gap = std::min(min_gap, gi.gap);
  }
  c.expect(worst <= kTermTol, "term residual " + fmt(worst));
  c.expect(min_gap > 0, "gap");
  c.metric("max_term_residual_below_tol", worst <= kTermTol);
  c.metric("min_gap", min_gap);
}

void tricluster_check(Checks& c, Rng&) {
  using namespace tri;
  nlohmann::json ranks = nlohmann::json::array();
  for (Orientation o : {Orientation::kAB, Orientation::kBA, Orientation::kBOverA}) {
    const int r = bulk_range(o).rank;
    c.expect(r == 16, "range dimension " + std::to_string(r));
    ranks.push_back(r);
  }
  c.metric("range_dimensions", ranks);
  const PepsSpec k33 = make_spec(k33_patch());
  const PepsSpec torus = make_spec(torus_2x2_patch());
  for (const PepsSpec* spec : {&k33, &torus}) {
    const double res = max_term_residual(build_h_tricluster(*spec), build_tricluster(*spec));
    c.expect(res <= kTermTol, "H_triC residual " + fmt(res));
  }
  int regions = 0;
  for (int size : {3, 4}) {
    for (const auto& region : graph::connected_subsets(k33.patch.graph, size)) {
      c.expect(check_uniqueness_condition(k33, region).holds, "uniqueness condition");
      ++regions;
    }
  }
  c.metric("unic_regions", regions);
  for (Orientation link : {Orientation::kBA, Orientation::kBOverA}) {
    const MuCheck m = check_mu(link, 0.5);
    c.expect(m.ok && std::abs(m.mu - 0.5) <= 1e-9, "mu = 1/2");
  }
  // K has a degenerate kernel on the 8-site torus, so its spectrum and
  // H - K/8 are checked on the 6-site torus; the gap on both.
  nlohmann::json patches = nlohmann::json::array();
  for (const PepsSpec* spec : {&k33, &torus}) {
    GapCheckOptions opts;
    opts.mu = false;
    opts.c = opts.eta = spec == &k33;
    const GapBoundReport r = gap_bound_checks(*spec, opts);
    if (opts.c) {
      c.expect(r.k_min_nonzero >= 1.0 / 3 - 1e-6, "K spectrum " + fmt(r.k_min_nonzero));
      c.expect(r.h_minus_k8_min >= -1e-9, "H - K/8 " + fmt(r.h_minus_k8_min));
    }
    c.expect(r.unique, "unique ground state on " + r.patch);
    c.expect(r.gap >= 1.0 / 24, "gap " + fmt(r.gap) + " on " + r.patch);
    nlohmann::json pj = {{"patch", r.patch}, {"gap", r.gap}};
    if (opts.c) pj["k_min_nonzero"] = r.k_min_nonzero;
    patches.push_back(pj);
  }
  c.metric("gap_checks", patches);
}

void tricluster_reduction(Checks& c, Rng&) {
  using namespace tri;
  const Patch hex = honeycomb_patch(1, 1);
  const Patch k33 = k33_patch();
  const std::vector<Patch> patches{sub_patch(hex, {0, 1}), sub_patch(hex, {0, 1, 3}),
                                   sub_patch(hex, {3, 0, 1, 2}), sub_patch(k33, {0, 1, 3, 5}),
                                   sub_patch(k33, {0, 1, 2, 3})};
  int combos = 0;
  double worst = 1.0;
  for (const Patch& p : patches) {
    for (BoundaryMode mode : {BoundaryMode::kTruncated, BoundaryMode::kPlus}) {
      const PepsSpec spec = make_spec(p, mode);
      const QuditState psi = build_tricluster(spec);
      const QuditState target = build_cluster_state(p.graph);
      int total = 1;
      for (int k = 0; k < p.num_sites(); ++k) total *= 3;
      for (int code = 0; code < total; ++code) {
        std::vector<int> choice;
        for (int k = 0, r = code; k < p.num_sites(); ++k, r /= 3) choice.push_back(r % 3);
        const TriReduction red = reduce_tricluster(spec, psi, choice);
        worst = std::min(worst, red.overlap);
        c.expect(search_pauli_frame(red.projected, target).has_value(), "Pauli frame found");
        ++combos;
      }
    }
  }
  c.expect(worst >= 1 - kFidelityTol, "overlap " + fmt(worst));
  c.metric("combinations", combos);
}

graph::SiteGraph star_patch() {
  const graph::SiteGraph g = graph::honeycomb_patch(2, 2);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 3) {
      std::vector<int> keep{v};
      for (int u : aklt2d::slot_order(g, v)) keep.push_back(u);
      return g.induced(keep);
    }
  }
  throw std::logic_error("no degree-3 site");
}

graph::SiteGraph eight_site_patch() {
  const graph::SiteGraph g = graph::honeycomb_patch(1, 2);
  for (const auto& s : graph::connected_subsets(g, 8)) {
    const graph::SiteGraph h = g.induced(s);
    bool ok = true;
    int deg3 = 0;
    for (int v = 0; v < h.num_vertices(); ++v) {
      ok = ok && h.degree(v) > 0;
      deg3 += h.degree(v) == 3;
    }
    if (ok && deg3 > 0) return h;
  }
  throw std::logic_error("no 8-site patch");
}

void aklt2d_check(Checks& c, Rng& rng) {
  using namespace aklt2d;
  double povm = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const CMat ps = site_projector(d);
    CMat sum = CMat::Zero(ps.cols(), ps.cols());
    for (Outcome a : kOutcomes) {
      const CMat f = povm_element(a, d);
      sum += f.adjoint() * f;
    }
    povm = std::max(povm, (sum - ps.adjoint() * ps).cwiseAbs().maxCoeff());
  }
  c.expect(povm <= kPovmTol, "POVM completeness " + fmt(povm));
  c.metric("povm_residual_below_tol", povm <= kPovmTol);
  // The operator O on a central a_z site with three a_x neighbors.
  const graph::SiteGraph star = star_patch();
  const std::vector<Outcome> zxxx{Outcome::kZ, Outcome::kX, Outcome::kX, Outcome::kX};
  const ExactSample s = project_outcomes(star, zxxx);
  const auto o = pauli::PauliString::parse("-X0.0 X1.0 X0.1 X2.0 X0.2 X3.0");
  const double odev = std::abs(virtual_expectation(star, zxxx, s.post_state, o) - 1.0);
  c.expect(odev <= kPovmTol, "operator O expectation");
  nlohmann::json patches = nlohmann::json::array();
  for (const graph::SiteGraph& g : {star, graph::honeycomb_patch(1, 1), eight_site_patch()}) {
    int branches = 0, failures = 0;
    double total = 0.0;
    for_each_branch(g, [&](const std::vector<Outcome>& a, double p, const QuditState& post) {
      ++branches;
      total += p;
      const auto rep = verify_encoded_cluster(g, OutcomeField{a, Provenance::kExactBorn}, post);
      if (!rep.ok || !logical_algebra_ok(form_domains(g, a))) ++failures;
    });
    c.expect(failures == 0, std::to_string(failures) + " failing branches");
    c.expect(std::abs(total - 1.0) <= 1e-9, "branch probabilities sum to 1");
    patches.push_back({{"sites", g.num_vertices()}, {"branches", branches}});
  }
  c.metric("exact_patches", patches);
  const graph::SiteGraph g33 = graph::honeycomb_patch(3, 3);
  for (int k = 0; k < 1000; ++k) {
    const auto f = sample_iid(g33.num_vertices(), IidModel{}, rng);
    const DomainGraph dg = form_domains(g33, f.outcomes);
    const DomainGraph again = form_domains(dg.as_graph(), dg.outcome);
    c.expect(again.num_domains() == dg.num_domains() && again.edges == dg.edges,
             "R1/R2 fixed point");
    c.expect(logical_algebra_ok(dg), "logical algebra");
  }
  c.metric("fixed_point_fields", 1000);
}

void percolation_check(Checks& c, Rng&) {
  using namespace aklt2d;
  Ensemble e;
  e.width = 20;
  e.height = 20;
  e.samples = 1000;
  e.seed = 7;
  const std::string a = percolation_stats(e).to_json().dump();
  const std::string b = percolation_stats(e).to_json().dump();
  c.expect(a == b, "byte-reproducible statistics");
  const auto st = nlohmann::json::parse(a);
  c.metric("uniform_mean_largest_fraction", st.at("mean_largest_fraction"));
  c.metric("uniform_ci95", st.at("ci95_half_width"));
  Ensemble z = e;
  z.iid = IidModel{{0.0, 0.0, 1.0}};
  z.samples = 20;
  const auto zs = percolation_stats(z);
  c.expect(zs.mean_domains == 1.0, "all a_z gives one domain");
  c.metric("all_z_mean_domains", zs.mean_domains);
}

void quasichain_check(Checks& c, Rng& rng) {
  using namespace quasichain;
  using aklt2d::Outcome;
  for (int n = 1; n <= 2; ++n) {
    const QuasichainSpec s{n};
    const QuditState psi = build_quasichain(s);
    const LocalHamiltonian h = quasichain_hamiltonian(s);
    double worst = 0.0;
    for (std::size_t k = 0; k < h.terms().size(); ++k) worst = std::max(worst, h.apply_term(k, psi.amps()).norm());
    c.expect(worst <= kTermTol, "chain term residual");
    const GroundInfo gi = ground_info(h);
    c.expect(gi.degeneracy == 1 && gi.gap > 1e-6, "unique gapped chain n=" + std::to_string(n));
  }
  const CoupledSystem sys = make_coupled(QuasichainSpec{2}, QuasichainSpec{2}, {1, 2});
  const QuditState psi = build_coupled(sys);
  const QuditState merged = merge_pendants(sys, psi);
  const LocalHamiltonian hm = merged_hamiltonian(sys);
  double mres = 0.0;
  for (std::size_t k = 0; k < hm.terms().size(); ++k) mres = std::max(mres, hm.apply_term(k, merged.amps()).norm());
  c.expect(mres <= kTermTol, "merged term residual");
  double mdev = 0.0;
  for (const CMat& op : {gates::kron(gates::X(), gates::X()), gates::CZ(), random_unitary(4, rng)}) {
    const QuditState a = merge_pendants(sys, apply_on_pair(sys, psi, op));
    const QuditState b = apply_on_merged(sys, merged, op);
    mdev = std::max(mdev, (a.amps() - b.amps()).cwiseAbs().maxCoeff());
  }
  c.expect(mdev <= kMergeTol, "merge-map conjugation " + fmt(mdev));
  c.metric("merge_identity_below_tol", mdev <= kMergeTol);
  // Every backbone branch, both modes, every identity-mode result.
  std::vector<int> backbone;
  for (int v = 0; v < static_cast<int>(sys.hosts.size()); ++v) {
    if (sys.hosts[static_cast<std::size_t>(v)] == v) backbone.push_back(v);
  }
  int total = 1;
  for (std::size_t k = 0; k < backbone.size(); ++k) total *= 3;
  int branches = 0;
  double worst = 1.0;
  for (int code = 0; code < total; ++code) {
    std::vector<Outcome> a(sys.hosts.size(), Outcome::kX);
    for (std::size_t k = 0, r = static_cast<std::size_t>(code); k < backbone.size(); ++k, r /= 3) {
      a[static_cast<std::size_t>(backbone[k])] = static_cast<Outcome>(r % 3);
    }
    try {
      const auto cz = couple_chains(sys, CouplingMode::kLogicalCz, rng, a);
      worst = std::min(worst, cz.fidelity);
      c.expect(cz.ok, "CZ-mode branch");
      for (int m = 0; m < 4; ++m) {
        const auto id = couple_chains(sys, CouplingMode::kIdentity, rng, a,
                                      std::array<int, 2>{m & 1, m >> 1});
        worst = std::min(worst, id.fidelity);
        c.expect(id.ok, "identity-mode branch");
      }
      ++branches;
    } catch (const std::domain_error&) {
      // Zero-probability branch.
    }
  }
  c.expect(branches > 0, "reachable branches");
  c.expect(worst >= 1 - kFidelityTol, "coupling fidelity " + fmt(worst));
  c.metric("coupling_branches", branches);
}

void nogo_check(Checks& c, Rng& rng) {
  using namespace nogo;
  auto unit = [](int k) {
    CVec v = CVec::Zero(8);
    v(k) = 1.0;
    return v;
  };
  CMat w_span(8, 2), ghz_span(8, 2);
  w_span << w_state(3).amps(), unit(0);
  ghz_span << unit(0), unit(7);
  const double dw = subspace_distance(ground_space(build_h_psi(w_state(3))).basis, orthonormal_basis(w_span));
  const double dg = subspace_distance(ground_space(build_h_psi(ghz_state(3))).basis, ghz_span);
  c.expect(dw <= kAngleTol, "S(W) " + fmt(dw));
  c.expect(dg <= kAngleTol, "S(GHZ) " + fmt(dg));
  c.metric("w_angle_below_tol", dw <= kAngleTol);
  c.metric("ghz_angle_below_tol", dg <= kAngleTol);
  nlohmann::json per_n = nlohmann::json::array();
  for (int n = 3; n <= 4; ++n) {
    int passed = 0, min_dim = 1 << n;
    for (int k = 0; k < 100; ++k) {
      const TestState t = random_entangled_state(n, rng);
      const NogoReport r = check_nogo(t.psi, rng);
      min_dim = std::min(min_dim, r.ground_dim);
      const bool ok = r.genuinely_entangled && r.ground_dim >= 2 && r.search.found &&
                      r.search.energy <= kProductTol && r.search.max_factor_size() <= 2;
      c.expect(ok, "no-go instance n=" + std::to_string(n) + " " + t.family);
      passed += ok;
    }
    per_n.push_back({{"n", n}, {"states", 100}, {"passed", passed}, {"min_ground_dim", min_dim}});
  }
  c.metric("random_states", per_n);
}

struct Spec {
  const char* name;
  double limit;
  std::function<void(Checks&, Rng&)> run;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> s{
      {"cluster-stabilizers", 5, cluster_stabilizers},
      {"cluster-hamiltonian", 30, cluster_hamiltonian_check},
      {"mbqc-determinism", 10, mbqc_determinism},
      {"mps-identities", 0, mps_identities},
      {"aklt-reduction", 0, aklt_reduction},
      {"aklt-hamiltonian", 0, aklt_hamiltonian_check},
      {"tricluster", 300, tricluster_check},
      {"tricluster-reduction", 0, tricluster_reduction},
      {"aklt2d", 0, aklt2d_check},
      {"percolation", 0, percolation_check},
      {"quasichain-magnet", 0, quasichain_check},
      {"nogo", 600, nogo_check},
  };
  return s;
}

}  // namespace

std::string CriterionResult::line() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " " << (id < 10 ? " " : "") << id << " " << name << " (";
  os.setf(std::ios::fixed);
  os.precision(1);
  os << seconds << " s)";
  if (!pass) os << ": " << failure;
  return os.str();
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kNumCriteria) throw std::out_of_range("criterion id");
  const Spec& s = specs()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.name = s.name;
  r.time_limit = s.limit;
  r.metrics = nlohmann::json::object();
  Rng rng(derive_seed(seed, "acceptance", static_cast<std::uint64_t>(id)));
  Checks checks(r);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    s.run(checks, rng);
  } catch (const std::exception& e) {
    if (r.failure.empty()) r.failure = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.failure.empty() && s.limit > 0 && r.seconds > s.limit) {
    r.failure = "runtime " + fmt(r.seconds) + " s over " + fmt(s.limit) + " s";
  }
  r.pass = r.failure.empty();
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kNumCriteria; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

nlohmann::json summary_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  nlohmann::json j;
  j["schema"] = "qlab.suite/1";
  j["seed"] = seed;
  nlohmann::json cs = nlohmann::json::array();
  int passed = 0;
  for (const CriterionResult& r : results) {
    nlohmann::json c{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"metrics", r.metrics}};
    if (!r.pass) c["failure"] = r.failure;
    if (r.time_limit > 0) c["time_limit_s"] = r.time_limit;
    cs.push_back(c);
    passed += r.pass;
  }
  j["criteria"] = cs;
  j["passed"] = passed;
  j["total"] = results.size();
  return j;
}

}  // namespace qlab::acceptance
