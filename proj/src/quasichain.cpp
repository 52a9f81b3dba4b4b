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

#include "qlab/quasichain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlab/gates.hpp"
#include "qlab/peps.hpp"
#include "qlab/spin.hpp"

namespace qlab::quasichain {

using aklt2d::ExactSample;
using aklt2d::Outcome;

namespace {

constexpr double kFidelityTol = 1e-9;

QuditState build_vbs(const graph::SiteGraph& g) {
  std::vector<CMat> maps;
  for (int v = 0; v < g.num_vertices(); ++v) maps.push_back(aklt2d::site_projector(g.degree(v)));
  return peps::contract_state(aklt2d::aklt_network(g, maps));
}

HostMap chain_hosts(const QuasichainSpec& spec) {
  HostMap h(spec.num_sites());
  for (int s = 0; s < spec.num_sites(); ++s) h[s] = spec.host(s);
  return h;
}

// Shared body of sampling and projection: forced == nullptr samples.
ExactSample measure(const graph::SiteGraph& g, const HostMap& hosts, const QuditState& psi,
                    Rng* rng, const std::vector<Outcome>* forced) {
  const int n = g.num_vertices();
  if (static_cast<int>(hosts.size()) != n || psi.num_sites() != n) {
    throw std::invalid_argument("host map and state must cover the graph");
  }
  ExactSample out;
  out.field.provenance = aklt2d::Provenance::kExactBorn;
  out.field.outcomes.assign(n, Outcome::kZ);
  out.probability = 1.0;
  std::vector<int> dims = psi.dims();
  CVec vec = psi.amps();
  for (int v = 0; v < n; ++v) {
    if (hosts[v] != v) continue;
    std::array<CVec, 3> branch;
    std::array<std::vector<int>, 3> bdims;
    std::array<double, 3> p{};
    for (Outcome a : aklt2d::kOutcomes) {
      const int k = static_cast<int>(a);
      if (forced && (*forced)[v] != a) continue;
      bdims[k] = dims;
      branch[k] = apply_site_map(bdims[k], vec, v, aklt2d::compressed_kraus(a, g.degree(v)));
      p[k] = branch[k].squaredNorm();
    }
    int pick = -1;
    if (forced) {
      pick = static_cast<int>((*forced)[v]);
    } else {
      double u = rng->uniform() * (p[0] + p[1] + p[2]);
      for (int k = 0; k < 3; ++k) {
        if (p[k] <= 0.0) continue;
        pick = k;
        if (u < p[k]) break;
        u -= p[k];
      }
    }
    if (p[pick] < 1e-14) throw std::domain_error("outcome field has zero probability");
    out.field.outcomes[v] = static_cast<Outcome>(pick);
    out.probability *= p[pick];  // vec is normalized, so p[pick] is conditional
    vec = branch[pick] / std::sqrt(p[pick]);
    dims = bdims[pick];
  }
  for (int v = 0; v < n; ++v) {
    if (hosts[v] == v) continue;
    const Outcome a = out.field.outcomes[hosts[v]];
    out.field.outcomes[v] = a;
    vec = apply_site_map(dims, vec, v, aklt2d::range_basis(a, g.degree(v)).adjoint());
  }
  out.post_state = QuditState(dims, vec);
  return out;
}

bool domain_graph_is_path(const aklt2d::DomainGraph& dg) {
  const int nd = dg.num_domains();
  if (static_cast<int>(dg.edges.size()) != nd - 1) return false;
  const auto adj = dg.adjacency();
  for (const auto& a : adj) {
    if (a.size() > 2) return false;
  }
  std::vector<bool> seen(nd, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    ++count;
    for (int d : adj[c]) {
      if (!seen[d]) {
        seen[d] = true;
        stack.push_back(d);
      }
    }
  }
  return count == nd;
}

CVec apply_logical(CVec v, int nd, int qubit, int pauli_index) {
  apply_local_inplace(std::vector<int>(nd, 2), v, {qubit}, gates::pauli(pauli_index));
  return v;
}

double overlap(const CVec& a, const CVec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

nlohmann::json vec_json(const CVec& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back({v(i).real(), v(i).imag()});
  return j;
}

}  // namespace

int QuasichainSpec::pendant(int i) const {
  if (i < 0 || i > n + 1) throw std::invalid_argument("pendant index out of range");
  return n + i;
}

int QuasichainSpec::host(int site) const {
  if (site < 0 || site >= num_sites()) throw std::invalid_argument("site out of range");
  if (site < n) return site;
  const int i = site - n;
  if (i == 0) return 0;
  if (i == n + 1) return n - 1;
  return i - 1;
}

void QuasichainSpec::validate() const {
  if (n < 1 || n > kMaxBackbone) throw std::invalid_argument("backbone length must be in 1..4");
}

graph::SiteGraph quasichain_graph(const QuasichainSpec& spec) {
  spec.validate();
  graph::SiteGraph g;
  for (int s = 0; s < spec.num_sites(); ++s) {
    graph::Vertex v;
    v.dim = spec.is_backbone(s) ? 4 : 2;
    const bool host_on_a = spec.host(s) % 2 == 0;
    const bool on_a = spec.is_backbone(s) ? host_on_a : !host_on_a;
    v.sublattice = on_a ? graph::Sublattice::kA : graph::Sublattice::kB;
    g.add_vertex(v);
  }
  for (int i = 0; i + 1 < spec.n; ++i) g.add_edge(i, i + 1);
  for (int i = 0; i <= spec.n + 1; ++i) g.add_edge(spec.host(spec.pendant(i)), spec.pendant(i));
  return g;
}

QuditState build_quasichain(const QuasichainSpec& spec) { return build_vbs(quasichain_graph(spec)); }

LocalHamiltonian quasichain_hamiltonian(const QuasichainSpec& spec) {
  const graph::SiteGraph g = quasichain_graph(spec);
  std::vector<SpinOps> ops;
  for (int v = 0; v < g.num_vertices(); ++v) {
    ops.push_back(spin_ops_from_map(aklt2d::site_projector(g.degree(v))));
  }
  LocalHamiltonian h(g.dims());
  for (const auto& [a, b] : g.edges()) {
    const bool pair = spec.is_backbone(a) && spec.is_backbone(b);
    h.add_term({a, b}, total_spin_projector(ops[a], ops[b], pair ? 6 : 4), pair ? "S3" : "S2");
  }
  return h;
}

CMat merge_map() {
  CMat u = CMat::Zero(4, 4);
  // Columns 2 m1-bit + m2-bit; rows 000, 111, W, W-bar (m = 3/2, -3/2, 1/2, -1/2).
  u(0, 0) = 1.0;  // (+1/2, +1/2) -> 3/2
  u(3, 1) = 1.0;  // (+1/2, -1/2) -> -1/2
  u(2, 2) = 1.0;  // (-1/2, +1/2) -> 1/2
  u(1, 3) = 1.0;  // (-1/2, -1/2) -> -3/2
  return u;
}

// ---------------------------------------------------------------------------

ExactSample measure_backbone(const graph::SiteGraph& g, const HostMap& hosts, const QuditState& psi,
                             Rng& rng) {
  return measure(g, hosts, psi, &rng, nullptr);
}

ExactSample project_backbone(const graph::SiteGraph& g, const HostMap& hosts, const QuditState& psi,
                             const std::vector<Outcome>& outcomes) {
  if (outcomes.size() != hosts.size()) throw std::invalid_argument("outcome field does not cover the graph");
  return measure(g, hosts, psi, nullptr, &outcomes);
}

nlohmann::json ChainReduction::to_json() const {
  nlohmann::json j;
  std::vector<std::string> a;
  for (Outcome o : sample.field.outcomes) a.push_back(aklt2d::to_string(o));
  j["outcomes"] = a;
  j["probability"] = sample.probability;
  j["domains"] = domains.to_json();
  j["encoding"] = report.to_json();
  j["is_path"] = is_path;
  if (simplified) {
    j["simplified"] = {{"representative", simplified->representative},
                       {"measured", simplified->measured},
                       {"results", simplified->results},
                       {"ok", simplified->report.ok}};
  }
  return j;
}

ChainReduction reduce_quasichain_to_cluster(const QuasichainSpec& spec, Rng& rng,
                                            const std::optional<std::vector<Outcome>>& forced,
                                            bool simplify) {
  const graph::SiteGraph g = quasichain_graph(spec);
  const HostMap hosts = chain_hosts(spec);
  const QuditState psi = build_vbs(g);
  ChainReduction r;
  if (forced) {
    std::vector<Outcome> full(spec.num_sites(), Outcome::kZ);
    if (static_cast<int>(forced->size()) == spec.n) {
      for (int v = 0; v < spec.n; ++v) full[v] = (*forced)[v];
    } else if (static_cast<int>(forced->size()) == spec.num_sites()) {
      full = *forced;
    } else {
      throw std::invalid_argument("forced outcomes must cover the backbone");
    }
    r.sample = project_backbone(g, hosts, psi, full);
  } else {
    r.sample = measure_backbone(g, hosts, psi, rng);
  }
  r.domains = aklt2d::form_domains(g, r.sample.field.outcomes);
  r.report = aklt2d::verify_encoded_cluster(g, r.sample.field, r.sample.post_state);
  r.is_path = domain_graph_is_path(r.domains);
  if (simplify) {
    r.simplified = aklt2d::simplify_domains(g, r.sample.field, r.sample.post_state, r.report, rng);
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(CouplingMode m) { return m == CouplingMode::kIdentity ? "identity" : "cz"; }

CouplingMode coupling_mode_from_string(const std::string& s) {
  if (s == "identity") return CouplingMode::kIdentity;
  if (s == "cz") return CouplingMode::kLogicalCz;
  throw std::invalid_argument("unknown coupling mode " + s);
}

CoupledSystem make_coupled(const QuasichainSpec& first, const QuasichainSpec& second,
                           std::pair<int, int> pendant_pair) {
  first.validate();
  second.validate();
  auto pendant_of = [](const QuasichainSpec& s, int i) {
    if (i < 0 || i > s.n + 1) throw std::invalid_argument("sites are not pendant partners");
    return s.pendant(i);
  };
  CoupledSystem sys;
  sys.first = first;
  sys.second = second;
  const int off = first.num_sites();
  sys.b1 = pendant_of(first, pendant_pair.first);
  sys.b2 = off + pendant_of(second, pendant_pair.second);
  const graph::SiteGraph g1 = quasichain_graph(first);
  const graph::SiteGraph g2 = quasichain_graph(second);
  for (const auto& v : g1.vertices()) sys.graph.add_vertex(v);
  for (const auto& v : g2.vertices()) sys.graph.add_vertex(v);
  for (const auto& [a, b] : g1.edges()) sys.graph.add_edge(a, b);
  for (const auto& [a, b] : g2.edges()) sys.graph.add_edge(off + a, off + b);
  for (int s = 0; s < first.num_sites(); ++s) sys.hosts.push_back(first.host(s));
  for (int s = 0; s < second.num_sites(); ++s) sys.hosts.push_back(off + second.host(s));
  return sys;
}

QuditState build_coupled(const CoupledSystem& sys) {
  const QuditState a = build_quasichain(sys.first);
  const QuditState b = build_quasichain(sys.second);
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return QuditState(dims, gates::kron_vec(b.amps(), a.amps()));
}

std::vector<int> merged_index(const CoupledSystem& sys) {
  std::vector<int> idx(sys.graph.num_vertices());
  for (int s = 0; s < sys.graph.num_vertices(); ++s) {
    idx[s] = s == sys.b2 ? -1 : s - (s > sys.b2 ? 1 : 0);
  }
  return idx;
}

QuditState merge_pendants(const CoupledSystem& sys, const QuditState& psi) {
  const std::vector<int> idx = merged_index(sys);
  std::vector<int> dims;
  for (int s = 0; s < psi.num_sites(); ++s) {
    if (s == sys.b2) continue;
    dims.push_back(s == sys.b1 ? 4 : psi.dim(s));
  }
  const CMat u = merge_map();
  QuditState shape(dims);
  CVec out = CVec::Zero(static_cast<Eigen::Index>(shape.size()));
  std::vector<int> nd(dims.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const cplx amp = psi.amps()(static_cast<Eigen::Index>(i));
    if (amp == cplx(0.0)) continue;
    const std::vector<int> d = psi.digits_of(i);
    for (int s = 0; s < psi.num_sites(); ++s) {
      if (idx[s] >= 0) nd[idx[s]] = d[s];
    }
    const int in = 2 * d[sys.b1] + d[sys.b2];
    for (int row = 0; row < 4; ++row) {
      if (u(row, in) == cplx(0.0)) continue;
      nd[idx[sys.b1]] = row;
      out(static_cast<Eigen::Index>(shape.index_of(nd))) += u(row, in) * amp;
    }
  }
  return QuditState(dims, out);
}

LocalHamiltonian merged_hamiltonian(const CoupledSystem& sys) {
  const std::vector<int> idx = merged_index(sys);
  std::vector<int> dims;
  for (int s = 0; s < sys.graph.num_vertices(); ++s) {
    if (s != sys.b2) dims.push_back(s == sys.b1 ? 4 : sys.graph.vertex(s).dim);
  }
  const CMat u = merge_map();
  const CMat iu = gates::kron(CMat::Identity(4, 4), u);
  LocalHamiltonian h(dims);
  const int off = sys.first.num_sites();
  for (int chain = 0; chain < 2; ++chain) {
    const LocalHamiltonian hc = quasichain_hamiltonian(chain == 0 ? sys.first : sys.second);
    for (const auto& t : hc.terms()) {
      std::vector<int> sites;
      for (int s : t.sites) sites.push_back(s + (chain == 0 ? 0 : off));
      const CMat m = t.dense();
      const auto hit = std::find_if(sites.begin(), sites.end(),
                                    [&](int s) { return s == sys.b1 || s == sys.b2; });
      if (hit == sites.end()) {
        h.add_term({idx[sites[0]], idx[sites[1]]}, m, t.tag);
        continue;
      }
      // Backbone site first, pendant second; embed on (A, b1, b2).
      const bool on_b1 = *hit == sys.b1;
      CMat big = CMat::Zero(16, 16);
      for (int a = 0; a < 4; ++a)
        for (int q1 = 0; q1 < 2; ++q1)
          for (int q2 = 0; q2 < 2; ++q2)
            for (int a2 = 0; a2 < 4; ++a2)
              for (int r1 = 0; r1 < 2; ++r1)
                for (int r2 = 0; r2 < 2; ++r2) {
                  cplx val = 0.0;
                  if (on_b1 && q2 == r2) val = m(2 * a + q1, 2 * a2 + r1);
                  if (!on_b1 && q1 == r1) val = m(2 * a + q2, 2 * a2 + r2);
                  big(4 * a + 2 * q1 + q2, 4 * a2 + 2 * r1 + r2) = val;
                }
      const CMat merged = iu * big * iu.adjoint();
      h.add_term({idx[sites[0]], idx[sys.b1]}, (merged + merged.adjoint()) / 2.0, t.tag);
    }
  }
  return h;
}

QuditState apply_on_pair(const CoupledSystem& sys, const QuditState& psi, const CMat& op) {
  CVec v = psi.amps();
  apply_local_inplace(psi.dims(), v, {sys.b1, sys.b2}, op);
  return QuditState(psi.dims(), v);
}

QuditState apply_on_merged(const CoupledSystem& sys, const QuditState& merged, const CMat& op) {
  const CMat u = merge_map();
  CVec v = merged.amps();
  apply_local_inplace(merged.dims(), v, {merged_index(sys)[sys.b1]}, u * op * u.adjoint());
  return QuditState(merged.dims(), v);
}

nlohmann::json CouplingResult::to_json() const {
  nlohmann::json j;
  j["mode"] = to_string(mode);
  std::vector<std::string> a;
  for (Outcome o : outcomes) a.push_back(aklt2d::to_string(o));
  j["outcomes"] = a;
  j["logical_u"] = logical_u;
  j["logical_v"] = logical_v;
  j["measured"] = measured;
  j["frame"] = {std::string(1, "IXYZ"[frame[0]]), std::string(1, "IXYZ"[frame[1]])};
  j["logical_before"] = vec_json(logical_before);
  j["logical_after"] = vec_json(logical_after);
  j["fidelity"] = fidelity;
  j["ok"] = ok;
  return j;
}

CouplingResult couple_chains(const CoupledSystem& sys, CouplingMode mode, Rng& rng,
                             const std::optional<std::vector<Outcome>>& outcomes,
                             const std::optional<std::array<int, 2>>& forced_results) {
  const graph::SiteGraph& g = sys.graph;
  const QuditState psi = build_coupled(sys);
  const ExactSample s = outcomes ? project_backbone(g, sys.hosts, psi, *outcomes)
                                 : measure_backbone(g, sys.hosts, psi, rng);
  const aklt2d::DomainGraph dg = aklt2d::form_domains(g, s.field.outcomes);
  const int nd = dg.num_domains();
  CouplingResult r;
  r.mode = mode;
  r.outcomes = s.field.outcomes;
  r.logical_u = dg.domain_of[sys.b1];
  r.logical_v = dg.domain_of[sys.b2];
  r.logical_before = aklt2d::decode_logical(g, dg, s.post_state);

  std::vector<int> dims = s.post_state.dims();
  CVec vec = s.post_state.amps();
  apply_local_inplace(dims, vec, {sys.b1}, gates::X());
  apply_local_inplace(dims, vec, {sys.b2}, gates::X());
  CVec after;
  std::array<int, 2> predicted{0, 0};
  if (mode == CouplingMode::kIdentity) {
    const double h = 1.0 / std::sqrt(2.0);
    const std::array<int, 2> pair{sys.b1, sys.b2};
    for (int k = 0; k < 2; ++k) {
      std::array<CVec, 2> branch;
      std::array<std::vector<int>, 2> bd;
      std::array<double, 2> p{};
      for (int m = 0; m < 2; ++m) {
        CMat bra(1, 2);
        bra << h, (m == 0 ? h : -h);
        bd[m] = dims;
        branch[m] = apply_site_map(bd[m], vec, pair[k], bra);
        p[m] = branch[m].squaredNorm();
      }
      const int m = forced_results ? (*forced_results)[k] : (rng.uniform() * (p[0] + p[1]) < p[0] ? 0 : 1);
      if (p[m] < 1e-14) throw std::domain_error("measurement result has zero probability");
      r.measured[k] = m;
      vec = branch[m] / std::sqrt(p[m]);
      dims = bd[m];
      predicted[k] = m ? 3 : 0;
    }
    after = aklt2d::decode_logical(g, dg, QuditState(dims, vec));
    r.target = r.logical_before;
  } else {
    apply_local_inplace(dims, vec, {sys.b1, sys.b2}, gates::CZ());
    after = aklt2d::decode_logical(g, dg, QuditState(dims, vec), {sys.b1, sys.b2});
    r.target = r.logical_before;
    for (Eigen::Index l = 0; l < r.target.size(); ++l) {
      if (((l >> r.logical_u) & 1) && ((l >> r.logical_v) & 1)) r.target(l) = -r.target(l);
    }
  }

  auto corrected = [&](int pu, int pv) {
    return apply_logical(apply_logical(after, nd, r.logical_u, pu), nd, r.logical_v, pv);
  };
  std::vector<std::array<int, 2>> order{predicted};
  for (int pu = 0; pu < 4; ++pu)
    for (int pv = 0; pv < 4; ++pv) order.push_back({pu, pv});
  r.fidelity = -1.0;
  for (const auto& f : order) {
    const double fid = overlap(r.target, corrected(f[0], f[1]));
    if (fid > r.fidelity + kFidelityTol) {
      r.fidelity = fid;
      r.frame = f;
    }
    if (fid >= 1.0 - kFidelityTol) break;
  }
  r.logical_after = corrected(r.frame[0], r.frame[1]);
  r.logical_after /= r.logical_after.norm();
  const cplx phase = r.logical_after.dot(r.target);
  if (std::abs(phase) > 0.0) r.logical_after *= phase / std::abs(phase);
  r.ok = r.fidelity >= 1.0 - kFidelityTol;
  return r;
}

}  // namespace qlab::quasichain
