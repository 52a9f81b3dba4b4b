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

#include "qlab/aklt2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qlab/gates.hpp"
#include "qlab/spin.hpp"

namespace qlab::aklt2d {

using pauli::Pauli;
using pauli::PauliString;

namespace {

constexpr double kStabTol = 1e-9;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Pauli axis_pauli(Outcome a) {
  switch (a) {
    case Outcome::kX: return Pauli::X;
    case Outcome::kY: return Pauli::Y;
    case Outcome::kZ: return Pauli::Z;
  }
  return Pauli::I;
}

std::string qubit_label(int v, int slot) { return std::to_string(v) + "." + std::to_string(slot); }

std::pair<int, int> parse_label(const std::string& label) {
  const auto dot = label.find('.');
  if (dot == std::string::npos) throw std::invalid_argument("bad virtual qubit label " + label);
  return {std::stoi(label.substr(0, dot)), std::stoi(label.substr(dot + 1))};
}

void check_patch(const graph::SiteGraph& g) {
  if (g.num_vertices() > kMaxSites) throw std::length_error("patch exceeds the site cap");
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) < 1 || g.degree(v) > 3) {
      throw std::invalid_argument("every site needs one to three edges");
    }
  }
}

void check_outcomes(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes) {
  if (static_cast<int>(outcomes.size()) != g.num_vertices()) {
    throw std::invalid_argument("outcome field does not cover the patch");
  }
}

struct Partition {
  std::vector<int> domain_of;
  std::vector<std::vector<int>> domains;
  std::map<std::pair<int, int>, int> bonds;
  std::vector<std::pair<int, int>> edges;
};

Partition partition(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes) {
  check_outcomes(g, outcomes);
  const int n = g.num_vertices();
  UnionFind uf(n);
  for (const auto& [a, b] : g.edges()) {
    if (outcomes[a] == outcomes[b]) uf.unite(a, b);  // R1
  }
  Partition p;
  p.domain_of.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = uf.find(v);
    if (id_of_root[r] < 0) {
      id_of_root[r] = static_cast<int>(p.domains.size());
      p.domains.emplace_back();
    }
    p.domain_of[v] = id_of_root[r];
    p.domains[id_of_root[r]].push_back(v);
  }
  for (const auto& [a, b] : g.edges()) {
    const int c = p.domain_of[a];
    const int d = p.domain_of[b];
    if (c != d) ++p.bonds[{std::min(c, d), std::max(c, d)}];
  }
  for (const auto& [cd, m] : p.bonds) {
    if (m % 2 == 1) p.edges.push_back(cd);  // R2
  }
  return p;
}

// Sequential application of the compressed Kraus maps.
struct BranchState {
  std::vector<int> dims;
  CVec vec;
};

BranchState apply_outcome(const graph::SiteGraph& g, const BranchState& s, int v, Outcome a) {
  BranchState out{s.dims, CVec()};
  out.vec = apply_site_map(out.dims, s.vec, v, compressed_kraus(a, g.degree(v)));
  return out;
}

ExactSample sample_from_state(const graph::SiteGraph& g, const QuditState& psi, Rng& rng) {
  ExactSample out;
  out.field.provenance = Provenance::kExactBorn;
  out.probability = 1.0;
  BranchState s{psi.dims(), psi.amps()};
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::array<BranchState, 3> branch;
    std::array<double, 3> p{};
    for (Outcome a : kOutcomes) {
      const int k = static_cast<int>(a);
      branch[k] = apply_outcome(g, s, v, a);
      p[k] = branch[k].vec.squaredNorm();
    }
    const double total = p[0] + p[1] + p[2];
    double u = rng.uniform() * total;
    int pick = -1;
    for (int k = 0; k < 3; ++k) {
      if (p[k] <= 0.0) continue;
      pick = k;
      if (u < p[k]) break;
      u -= p[k];
    }
    out.field.outcomes.push_back(static_cast<Outcome>(pick));
    out.probability *= p[pick] / total;
    s = std::move(branch[pick]);
    s.vec /= std::sqrt(p[pick]);
  }
  out.post_state = QuditState(s.dims, s.vec);
  return out;
}

struct Component {
  int size = 0;
  bool left = false;
  bool right = false;
};

}  // namespace

std::string to_string(Outcome a) {
  switch (a) {
    case Outcome::kX: return "a_x";
    case Outcome::kY: return "a_y";
    case Outcome::kZ: return "a_z";
  }
  return "?";
}

Outcome outcome_from_string(const std::string& s) {
  for (Outcome a : kOutcomes) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown outcome " + s);
}

std::string to_string(Provenance p) {
  return p == Provenance::kExactBorn ? "exact-Born" : "iid-model";
}

// ---------------------------------------------------------------------------

CMat site_projector(int d) {
  const CMat sym = symmetric_isometry(d);
  CMat p(d + 1, sym.cols());
  p.row(0) = sym.row(0);
  p.row(1) = sym.row(d);
  for (int k = 1; k < d; ++k) p.row(k + 1) = sym.row(k);
  return p;
}

CMat range_basis(Outcome a, int d) {
  const double r = 1.0 / std::sqrt(2.0);
  CVec e0(2), e1(2);
  switch (a) {
    case Outcome::kX:
      e0 << r, r;
      e1 << r, -r;
      break;
    case Outcome::kY:
      e0 << r, cplx(0.0, r);
      e1 << r, cplx(0.0, -r);
      break;
    case Outcome::kZ:
      e0 << 1.0, 0.0;
      e1 << 0.0, 1.0;
      break;
  }
  CVec v0 = e0, v1 = e1;
  for (int k = 1; k < d; ++k) {
    v0 = gates::kron_vec(v0, e0);
    v1 = gates::kron_vec(v1, e1);
  }
  CMat e(v0.size(), 2);
  e.col(0) = v0;
  e.col(1) = v1;
  return e;
}

CMat povm_element(Outcome a, int d) {
  const CMat e = range_basis(a, d);
  return std::sqrt((d + 1) / 6.0) * e * e.adjoint();
}

std::array<CMat, 3> povm_elements() {
  return {povm_element(Outcome::kX), povm_element(Outcome::kY), povm_element(Outcome::kZ)};
}

CMat compressed_kraus(Outcome a, int d) {
  return std::sqrt((d + 1) / 6.0) * range_basis(a, d).adjoint() * site_projector(d).adjoint();
}

// ---------------------------------------------------------------------------

std::vector<int> slot_order(const graph::SiteGraph& g, int v) {
  std::vector<int> nb = g.neighbors(v);
  std::sort(nb.begin(), nb.end());
  return nb;
}

peps::Network aklt_network(const graph::SiteGraph& g, const std::vector<CMat>& site_maps) {
  if (static_cast<int>(site_maps.size()) != g.num_vertices()) {
    throw std::invalid_argument("one site map per vertex");
  }
  const double r = 1.0 / std::sqrt(2.0);
  CMat singlet(2, 2);
  singlet << 0.0, r, -r, 0.0;
  peps::Network net;
  net.projectors = site_maps;
  std::vector<std::vector<int>> order(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) order[v] = slot_order(g, v);
  auto slot = [&](int v, int u) {
    return static_cast<int>(std::find(order[v].begin(), order[v].end(), u) - order[v].begin());
  };
  for (const auto& [a, b] : g.edges()) {
    net.bonds.push_back({{a, slot(a, b)}, {b, slot(b, a)}, singlet});
  }
  return net;
}

QuditState build_aklt2d(const graph::SiteGraph& g) {
  check_patch(g);
  std::vector<CMat> maps;
  for (int v = 0; v < g.num_vertices(); ++v) maps.push_back(site_projector(g.degree(v)));
  return peps::contract_state(aklt_network(g, maps));
}

// ---------------------------------------------------------------------------

void IidModel::validate() const {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument("outcome probabilities must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("outcome probabilities must sum to 1");
}

OutcomeField sample_iid(int num_sites, const IidModel& model, Rng& rng) {
  model.validate();
  OutcomeField f;
  f.provenance = Provenance::kIidModel;
  f.outcomes.reserve(num_sites);
  for (int v = 0; v < num_sites; ++v) {
    const double u = rng.uniform();
    int k = 0;
    double acc = model.p[0];
    while (k < 2 && (u >= acc || model.p[k] == 0.0)) acc += model.p[++k];
    f.outcomes.push_back(static_cast<Outcome>(k));
  }
  return f;
}

ExactSample sample_exact(const graph::SiteGraph& g, Rng& rng) {
  return sample_from_state(g, build_aklt2d(g), rng);
}

ExactSample project_outcomes(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes) {
  check_outcomes(g, outcomes);
  const QuditState psi = build_aklt2d(g);
  BranchState s{psi.dims(), psi.amps()};
  for (int v = 0; v < g.num_vertices(); ++v) s = apply_outcome(g, s, v, outcomes[v]);
  ExactSample out;
  out.field = {outcomes, Provenance::kExactBorn};
  out.probability = s.vec.squaredNorm();
  if (out.probability < 1e-14) throw std::domain_error("outcome field has zero probability");
  out.post_state = QuditState(s.dims, s.vec);
  return out;
}

void for_each_branch(const graph::SiteGraph& g, const BranchVisitor& visit, double min_probability) {
  const QuditState psi = build_aklt2d(g);
  const int n = g.num_vertices();
  std::vector<Outcome> outcomes(n);
  std::function<void(int, const BranchState&)> rec = [&](int v, const BranchState& s) {
    if (v == n) {
      visit(outcomes, s.vec.squaredNorm(), QuditState(s.dims, s.vec));
      return;
    }
    for (Outcome a : kOutcomes) {
      BranchState next = apply_outcome(g, s, v, a);
      if (next.vec.squaredNorm() <= min_probability) continue;
      outcomes[v] = a;
      rec(v + 1, next);
    }
  };
  rec(0, BranchState{psi.dims(), psi.amps()});
}

std::vector<Branch> enumerate_branches(const graph::SiteGraph& g) {
  std::vector<Branch> out;
  for_each_branch(g, [&](const std::vector<Outcome>& a, double p, const QuditState&) {
    out.push_back({a, p});
  });
  return out;
}

std::size_t outcome_code(const std::vector<Outcome>& outcomes) {
  std::size_t code = 0;
  for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it) {
    code = 3 * code + static_cast<std::size_t>(*it);
  }
  return code;
}

// ---------------------------------------------------------------------------

int lambda(const graph::SiteGraph& g, int v) {
  return g.vertex(v).sublattice == graph::Sublattice::kB ? -1 : 1;
}

std::vector<std::vector<int>> DomainGraph::adjacency() const {
  std::vector<std::vector<int>> adj(domains.size());
  for (const auto& [c, d] : edges) {
    adj[c].push_back(d);
    adj[d].push_back(c);
  }
  return adj;
}

graph::SiteGraph DomainGraph::as_graph() const {
  graph::SiteGraph g(num_domains());
  for (const auto& [c, d] : edges) g.add_edge(c, d);
  return g;
}

nlohmann::json DomainGraph::to_json() const {
  nlohmann::json j;
  j["domains"] = domains;
  std::vector<std::string> out;
  for (Outcome a : outcome) out.push_back(to_string(a));
  j["outcomes"] = out;
  j["edges"] = nlohmann::json::array();
  for (const auto& [c, d] : edges) j["edges"].push_back({c, d});
  j["logical"] = nlohmann::json::array();
  for (const auto& l : logical) j["logical"].push_back({{"x", l.x.str()}, {"z", l.z.str()}});
  return j;
}

DomainGraph form_domains(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes) {
  Partition p = partition(g, outcomes);
  DomainGraph dg;
  dg.domain_of = std::move(p.domain_of);
  dg.domains = std::move(p.domains);
  dg.bonds = std::move(p.bonds);
  dg.edges = std::move(p.edges);
  for (const auto& dom : dg.domains) {
    const Outcome a = outcomes[dom.front()];
    const Pauli sigma = axis_pauli(a);
    const Pauli xbar = a == Outcome::kZ ? Pauli::X : Pauli::Z;
    dg.outcome.push_back(a);
    std::vector<std::pair<std::string, int>> qubits;  // label, lambda
    for (int v : dom) {
      for (int k = 0; k < g.degree(v); ++k) qubits.push_back({qubit_label(v, k), lambda(g, v)});
    }
    LogicalPair lp;
    std::vector<PauliString> gens;
    if (!qubits.empty()) {
      std::map<std::string, Pauli> xf;
      for (const auto& q : qubits) xf[q.first] = xbar;
      lp.x = PauliString(xf);
      const auto& [l0, s0] = qubits.front();
      lp.z = PauliString({{l0, sigma}}, s0 < 0 ? 2 : 0);
      for (std::size_t j = 1; j < qubits.size(); ++j) {
        const auto& [lj, sj] = qubits[j];
        gens.emplace_back(std::map<std::string, Pauli>{{l0, sigma}, {lj, sigma}}, s0 * sj < 0 ? 2 : 0);
      }
    }
    dg.logical.push_back(lp);
    dg.stabilizers.push_back(std::move(gens));
  }
  return dg;
}

bool logical_algebra_ok(const DomainGraph& dg) {
  for (int c = 0; c < dg.num_domains(); ++c) {
    const auto& l = dg.logical[c];
    if (l.x.is_identity()) continue;  // domain without virtual qubits
    if (l.x.commutes_with(l.z)) return false;
    for (const auto& s : dg.stabilizers[c]) {
      if (!s.commutes_with(l.x) || !s.commutes_with(l.z)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

cplx virtual_expectation(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes,
                         const QuditState& post, const PauliString& p,
                         const std::optional<std::vector<int>>& sites) {
  check_outcomes(g, outcomes);
  std::vector<int> list;
  if (sites) {
    list = *sites;
  } else {
    list.resize(g.num_vertices());
    std::iota(list.begin(), list.end(), 0);
  }
  if (post.num_sites() != static_cast<int>(list.size())) {
    throw std::invalid_argument("state does not match the site list");
  }
  std::map<int, std::vector<Pauli>> per_site;
  for (const auto& [label, f] : p.factors()) {
    const auto [v, k] = parse_label(label);
    if (v < 0 || v >= g.num_vertices() || k < 0 || k >= g.degree(v)) {
      throw std::invalid_argument("virtual qubit out of range: " + label);
    }
    auto& ops = per_site[v];
    if (ops.empty()) ops.assign(g.degree(v), Pauli::I);
    ops[k] = f;
  }
  CVec vec = post.amps();
  for (std::size_t pos = 0; pos < list.size(); ++pos) {
    const auto it = per_site.find(list[pos]);
    if (it == per_site.end()) continue;
    CMat op = pauli::matrix(it->second[0]);
    for (std::size_t k = 1; k < it->second.size(); ++k) op = gates::kron(op, pauli::matrix(it->second[k]));
    const CMat e = range_basis(outcomes[list[pos]], g.degree(list[pos]));
    apply_local_inplace(post.dims(), vec, {static_cast<int>(pos)}, e.adjoint() * op * e);
  }
  return p.phase() * post.amps().dot(vec);
}

PauliString cluster_generator(const DomainGraph& dg, int c, int b) {
  PauliString g = dg.logical.at(c).x;
  if (b) g = g * dg.logical[c].z;
  const auto adj = dg.adjacency();
  for (int d : adj[c]) g = g * dg.logical[d].z;
  return g;
}

int predicted_twist(const DomainGraph& dg, int c) {
  const Outcome own = dg.outcome.at(c);
  const Outcome twisting = own == Outcome::kY ? Outcome::kX : Outcome::kY;
  int count = 0;
  for (const auto& [cd, m] : dg.bonds) {
    if (cd.first != c && cd.second != c) continue;
    const int other = cd.first == c ? cd.second : cd.first;
    if (dg.outcome[other] == twisting) count += m;
  }
  return count % 2;
}

nlohmann::json EncodingReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok;
  j["domains"] = nlohmann::json::array();
  for (const auto& d : domains) {
    j["domains"].push_back({{"domain", d.domain},
                            {"intra_min", d.intra_min},
                            {"intra_ok", d.intra_ok},
                            {"twist", d.twist},
                            {"predicted_twist", d.predicted_twist},
                            {"phase_power", d.phase_power},
                            {"generator", d.generator},
                            {"generator_ok", d.generator_ok}});
  }
  return j;
}

namespace {

EncodingReport check_generators(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes,
                                const DomainGraph& dg, const QuditState& post,
                                const std::optional<std::vector<int>>& sites,
                                const EncodingReport* fixed) {
  EncodingReport rep;
  rep.ok = true;
  auto on_sites = [&](const PauliString& p) {
    if (!sites) return true;
    for (const auto& [label, f] : p.factors()) {
      const int v = parse_label(label).first;
      if (std::find(sites->begin(), sites->end(), v) == sites->end()) return false;
    }
    return true;
  };
  for (int c = 0; c < dg.num_domains(); ++c) {
    DomainCheck dc;
    dc.domain = c;
    dc.predicted_twist = predicted_twist(dg, c);
    dc.intra_min = 1.0;
    for (const auto& s : dg.stabilizers[c]) {
      if (!on_sites(s)) continue;
      dc.intra_min = std::min(dc.intra_min, virtual_expectation(g, outcomes, post, s, sites).real());
    }
    dc.intra_ok = dc.intra_min >= 1.0 - kStabTol;
    auto try_generator = [&](int b, int t) {
      const PauliString gen = cluster_generator(dg, c, b);
      const cplx e = virtual_expectation(g, outcomes, post, gen, sites);
      const cplx s = std::pow(cplx(0.0, 1.0), t);
      if (std::abs(s * e - 1.0) > kStabTol) return false;
      dc.twist = b;
      dc.phase_power = t;
      dc.generator = gen.with_phase(gen.phase_power() + t).str();
      return true;
    };
    if (fixed) {
      const DomainCheck& f = fixed->domains.at(c);
      if (f.twist >= 0) try_generator(f.twist, f.phase_power);
    } else {
      for (int b = 0; b < 2 && dc.twist < 0; ++b) {
        for (int t = 0; t < 4; ++t) {
          if (try_generator(b, t)) break;
        }
      }
    }
    dc.generator_ok = dc.twist >= 0 && dc.twist == dc.predicted_twist;
    rep.ok = rep.ok && dc.intra_ok && dc.generator_ok;
    rep.domains.push_back(dc);
  }
  return rep;
}

}  // namespace

EncodingReport verify_encoded_cluster(const graph::SiteGraph& g, const OutcomeField& field,
                                      const std::optional<QuditState>& post) {
  if (field.provenance != Provenance::kExactBorn) {
    throw std::invalid_argument("encoded-cluster verification needs an exact-Born field");
  }
  if (!post) throw std::invalid_argument("encoded-cluster verification needs the post state");
  const DomainGraph dg = form_domains(g, field.outcomes);
  return check_generators(g, field.outcomes, dg, *post, std::nullopt, nullptr);
}

CVec decode_logical(const graph::SiteGraph& g, const DomainGraph& dg, const QuditState& post,
                    const std::vector<int>& flipped) {
  if (post.num_sites() != g.num_vertices()) throw std::invalid_argument("state does not match the patch");
  const int nd = dg.num_domains();
  CVec out = CVec::Zero(Eigen::Index{1} << nd);
  std::vector<int> digits(g.num_vertices(), 0);
  for (Eigen::Index l = 0; l < out.size(); ++l) {
    for (int c = 0; c < nd; ++c) {
      const int bit = static_cast<int>((l >> c) & 1);
      const int first = dg.domains[c].front();
      for (int v : dg.domains[c]) {
        int b = bit ^ (lambda(g, v) != lambda(g, first) ? 1 : 0);
        if (std::find(flipped.begin(), flipped.end(), v) != flipped.end()) b ^= 1;
        digits[v] = post.dim(v) == 1 ? 0 : b;
      }
    }
    out(l) = post.amps()(static_cast<Eigen::Index>(post.index_of(digits)));
  }
  return out;
}

Simplified simplify_domains(const graph::SiteGraph& g, const OutcomeField& field,
                            const QuditState& post, const EncodingReport& full, Rng& rng) {
  const DomainGraph dg = form_domains(g, field.outcomes);
  if (post.num_sites() != g.num_vertices()) throw std::invalid_argument("state does not match the patch");
  Simplified out;
  std::vector<int> dims = post.dims();
  CVec vec = post.amps();
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& dom : dg.domains) {
    const int rep = dom.front();
    out.representative.push_back(rep);
    for (std::size_t k = 1; k < dom.size(); ++k) {
      const int v = dom[k];
      std::array<CVec, 2> branch;
      std::array<double, 2> p{};
      for (int m = 0; m < 2; ++m) {
        CMat bra(1, 2);
        bra << r, (m == 0 ? r : -r);
        std::vector<int> d = dims;
        branch[m] = apply_site_map(d, vec, v, bra);
        p[m] = branch[m].squaredNorm();
      }
      const int m = rng.uniform() * (p[0] + p[1]) < p[0] ? 0 : 1;
      vec = branch[m] / std::sqrt(p[m]);
      dims[v] = 1;
      if (m == 1) apply_local_inplace(dims, vec, {rep}, gates::Z());
      out.measured.push_back(v);
      out.results.push_back(m);
    }
  }
  out.state = QuditState(std::vector<int>(dg.num_domains(), 2), vec);
  out.report = check_generators(g, field.outcomes, dg, out.state, out.representative, &full);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Model m) { return m == Model::kIid ? "iid" : "exact"; }

Model model_from_string(const std::string& s) {
  if (s == "iid") return Model::kIid;
  if (s == "exact") return Model::kExact;
  throw std::invalid_argument("unknown outcome model " + s);
}

SampleStats domain_statistics(const graph::SiteGraph& g, const std::vector<Outcome>& outcomes) {
  const Partition p = partition(g, outcomes);
  const int nd = static_cast<int>(p.domains.size());
  SampleStats st;
  st.domains = nd;
  st.edges = static_cast<int>(p.edges.size());
  st.degrees.assign(nd, 0);
  UnionFind uf(nd);
  for (const auto& [c, d] : p.edges) {
    ++st.degrees[c];
    ++st.degrees[d];
    uf.unite(c, d);
  }
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  bool positioned = g.num_vertices() > 0;
  for (const auto& v : g.vertices()) {
    positioned = positioned && v.has_position;
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
  }
  std::vector<bool> dom_left(nd, false), dom_right(nd, false);
  if (positioned && xmax > xmin) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.vertex(v).x == xmin) dom_left[p.domain_of[v]] = true;
      if (g.vertex(v).x == xmax) dom_right[p.domain_of[v]] = true;
    }
  }
  std::vector<Component> comp(nd);
  for (int c = 0; c < nd; ++c) {
    Component& k = comp[uf.find(c)];
    ++k.size;
    k.left = k.left || dom_left[c];
    k.right = k.right || dom_right[c];
    if (dom_left[c] && dom_right[c]) st.single_domain_span = true;
  }
  int largest = 0;
  for (const auto& k : comp) {
    largest = std::max(largest, k.size);
    if (k.size >= 2 && k.left && k.right) st.spanning = true;
  }
  st.largest_fraction = nd > 0 ? static_cast<double>(largest) / nd : 0.0;
  return st;
}

nlohmann::json PercolationStats::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["provenance"] = provenance;
  j["sites"] = sites;
  j["samples"] = samples;
  j["seed"] = seed;
  j["mean_largest_fraction"] = mean_largest_fraction;
  j["ci95_half_width"] = ci95_half_width;
  j["spanning_probability"] = spanning_probability;
  j["single_domain_span_probability"] = single_domain_span_probability;
  j["mean_domains"] = mean_domains;
  j["mean_edges"] = mean_edges;
  j["degree_histogram"] = degree_histogram;
  return j;
}

PercolationStats percolation_stats(const Ensemble& e) {
  if (e.samples < 1) throw std::invalid_argument("need at least one sample");
  const graph::SiteGraph g = e.patch ? *e.patch : graph::honeycomb_patch(e.height, e.width);
  PercolationStats out;
  out.model = to_string(e.model);
  out.provenance = to_string(e.model == Model::kExact ? Provenance::kExactBorn : Provenance::kIidModel);
  out.sites = g.num_vertices();
  out.samples = e.samples;
  out.seed = e.seed;
  std::optional<QuditState> psi;
  if (e.model == Model::kExact) {
    psi = build_aklt2d(g);
  } else {
    e.iid.validate();
  }
  double sum = 0.0, sum2 = 0.0;
  long long spans = 0, single = 0, domains = 0, edges = 0;
  for (int k = 0; k < e.samples; ++k) {
    Rng rng(derive_seed(e.seed, "aklt2d-percolation", static_cast<std::uint64_t>(k)));
    const std::vector<Outcome> outcomes = e.model == Model::kExact
                                              ? sample_from_state(g, *psi, rng).field.outcomes
                                              : sample_iid(g.num_vertices(), e.iid, rng).outcomes;
    const SampleStats st = domain_statistics(g, outcomes);
    sum += st.largest_fraction;
    sum2 += st.largest_fraction * st.largest_fraction;
    spans += st.spanning ? 1 : 0;
    single += st.single_domain_span ? 1 : 0;
    domains += st.domains;
    edges += st.edges;
    for (int d : st.degrees) {
      if (static_cast<int>(out.degree_histogram.size()) <= d) out.degree_histogram.resize(d + 1, 0);
      ++out.degree_histogram[d];
    }
  }
  const double n = e.samples;
  out.mean_largest_fraction = sum / n;
  const double var = e.samples > 1 ? std::max(0.0, (sum2 - sum * sum / n) / (n - 1)) : 0.0;
  out.ci95_half_width = 1.96 * std::sqrt(var / n);
  out.spanning_probability = spans / n;
  out.single_domain_span_probability = single / n;
  out.mean_domains = domains / n;
  out.mean_edges = edges / n;
  return out;
}

double exact_mean_largest_fraction(const graph::SiteGraph& g) {
  double mean = 0.0;
  for_each_branch(g, [&](const std::vector<Outcome>& a, double p, const QuditState&) {
    mean += p * domain_statistics(g, a).largest_fraction;
  });
  return mean;
}

double reweighted_mean_largest_fraction(const graph::SiteGraph& g, const IidModel& model,
                                        int samples, std::uint64_t seed) {
  model.validate();
  std::map<std::size_t, double> born;
  for (const auto& b : enumerate_branches(g)) born[outcome_code(b.outcomes)] = b.probability;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, "aklt2d-reweight", static_cast<std::uint64_t>(k)));
    const auto f = sample_iid(g.num_vertices(), model, rng).outcomes;
    const auto it = born.find(outcome_code(f));
    if (it == born.end()) continue;
    double q = 1.0;
    for (Outcome a : f) q *= model.p[static_cast<int>(a)];
    const double w = it->second / q;
    num += w * domain_statistics(g, f).largest_fraction;
    den += w;
  }
  if (den == 0.0) throw std::runtime_error("no iid draw reached a Born branch");
  return num / den;
}

}  // namespace qlab::aklt2d
