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

#include "qlab/tricluster.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>
#include <stdexcept>

#include "qlab/cluster.hpp"
#include "qlab/gates.hpp"

namespace qlab::tri {

namespace {

constexpr double kEigTol = 1e-6;
constexpr double kOpTol = 1e-9;

CMat cbond() {
  CMat b(2, 2);
  b << 0.5, 0.5, 0.5, -0.5;
  return b;
}

// Index of slot `slot` among the present slots of a site.
int local_slot(const std::vector<int>& present, int slot) {
  const auto it = std::find(present.begin(), present.end(), slot);
  if (it == present.end()) throw std::logic_error("slot not present");
  return static_cast<int>(it - present.begin());
}

std::vector<int> reversed(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// Edges with both endpoints in the region.
std::vector<int> internal_edges(const Patch& p, const std::vector<int>& region) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
    const auto& ed = p.edges[e];
    const bool in_a = std::find(region.begin(), region.end(), ed.a) != region.end();
    const bool in_b = std::find(region.begin(), region.end(), ed.b) != region.end();
    if (in_a && in_b) out.push_back(e);
  }
  return out;
}

// Open-leg range with rows little-endian over the region (region[0] fastest).
CMat open_leg_range_le(const PepsSpec& spec, const std::vector<int>& region,
                       const std::vector<int>& edges) {
  peps::Network net;
  std::map<int, int> pos;
  for (std::size_t k = 0; k < region.size(); ++k) {
    pos[region[k]] = static_cast<int>(k);
    net.projectors.push_back(spec.projectors.at(region[k]));
  }
  for (int e : edges) {
    const auto& ed = spec.patch.edges.at(e);
    if (!pos.count(ed.a) || !pos.count(ed.b)) {
      throw std::invalid_argument("edge leaves the region");
    }
    const int sa = local_slot(spec.slots[ed.a], slot_of(false, ed.orientation));
    const int sb = local_slot(spec.slots[ed.b], slot_of(true, ed.orientation));
    net.bonds.push_back({{pos[ed.a], sa}, {pos[ed.b], sb}, spec.bond});
  }
  if (spec.boundary == BoundaryMode::kPlus) {
    for (int s : region) {
      std::set<int> used;
      for (const auto& ed : spec.patch.edges) {
        if (ed.a == s) used.insert(slot_of(false, ed.orientation));
        if (ed.b == s) used.insert(slot_of(true, ed.orientation));
      }
      for (int j = 0; j < 3; ++j) {
        if (!used.count(j)) net.caps[{pos[s], j}] = gates::ket_plus();
      }
    }
  }
  return orthonormal_basis(peps::contract(net).amplitudes, kRankTol);
}

CMat to_kronecker_rows(const CMat& le, const std::vector<int>& dims) {
  std::vector<int> order(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) order[k] = static_cast<int>(dims.size() - 1 - k);
  CMat out(le.rows(), le.cols());
  for (Eigen::Index c = 0; c < le.cols(); ++c) {
    out.col(c) = peps::permute_legs(dims, le.col(c), order);
  }
  return out;
}

std::vector<int> region_dims(const PepsSpec& spec, const std::vector<int>& region) {
  std::vector<int> d;
  for (int s : region) d.push_back(static_cast<int>(spec.projectors.at(s).rows()));
  return d;
}

// Two full sites with one bond of orientation o; the A site comes first.
CMat bulk_pair_range(Orientation o) {
  peps::Network net;
  net.projectors = {tricluster_projector(), tricluster_projector()};
  net.bonds.push_back({{0, slot_of(false, o)}, {1, slot_of(true, o)}, cbond()});
  const CMat le = orthonormal_basis(peps::contract(net).amplitudes, kRankTol);
  return to_kronecker_rows(le, {kLabels, kLabels});
}

double min_eigenvalue(const CMat& h) { return hermitian_eigenvalues(h)(0); }

struct KernelCheck {
  int kernel_dim = 0;
  double first_nonzero = 0.0;
  double distance = 1.0;
};

// Compares ker(h) of a positive semidefinite h with span(sub). When the
// dimensions agree, ||h sub|| / (first nonzero eigenvalue) bounds the sine
// of the largest principal angle.
KernelCheck compare_kernel(const CMat& h, const CMat& sub) {
  const RVec ev = hermitian_eigenvalues(h);
  KernelCheck k;
  while (k.kernel_dim < ev.size() && ev(k.kernel_dim) <= 1e-8) ++k.kernel_dim;
  if (k.kernel_dim < ev.size()) k.first_nonzero = ev(k.kernel_dim);
  if (k.kernel_dim == sub.cols() && k.first_nonzero > 0) {
    k.distance = std::min(1.0, (h * sub).norm() / k.first_nonzero);
  }
  return k;
}

}  // namespace

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::kAB:
      return "ab";
    case Orientation::kBA:
      return "ba";
    case Orientation::kBOverA:
      return "b-over-a";
  }
  return "?";
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "ab") return Orientation::kAB;
  if (s == "ba") return Orientation::kBA;
  if (s == "b-over-a") return Orientation::kBOverA;
  throw std::invalid_argument("unknown orientation: " + s);
}

int slot_of(bool is_b, Orientation o) {
  switch (o) {
    case Orientation::kAB:
      return is_b ? 0 : 1;
    case Orientation::kBA:
      return is_b ? 1 : 0;
    case Orientation::kBOverA:
      return 2;
  }
  return -1;
}

bool Patch::is_b(int site) const { return graph.vertex(site).sublattice == graph::Sublattice::kB; }

int Patch::edge_index(int u, int v) const {
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if ((edges[e].a == u && edges[e].b == v) || (edges[e].a == v && edges[e].b == u)) return e;
  }
  return -1;
}

void Patch::validate() const {
  std::vector<std::set<int>> used(num_sites());
  for (const auto& e : edges) {
    if (is_b(e.a) || !is_b(e.b)) throw std::invalid_argument("edge must join A to B");
    if (!used[e.a].insert(slot_of(false, e.orientation)).second ||
        !used[e.b].insert(slot_of(true, e.orientation)).second) {
      throw std::invalid_argument("slot used twice on one site");
    }
  }
}

Patch patch_from_graph(const graph::SiteGraph& g) {
  Patch p;
  p.graph = g;
  p.name = "patch";
  for (const auto& [u, v] : g.edges()) {
    const auto cu = graph::honey_coord(g.vertex(u));
    const auto cv = graph::honey_coord(g.vertex(v));
    if (cu.is_b == cv.is_b) throw std::invalid_argument("edge within one sublattice");
    const int a = cu.is_b ? v : u;
    const int b = cu.is_b ? u : v;
    const auto ca = cu.is_b ? cv : cu;
    const auto cb = cu.is_b ? cu : cv;
    Orientation o;
    if (cb.x == ca.x && cb.y == ca.y) {
      o = Orientation::kAB;
    } else if (cb.x == ca.x - 1 && cb.y == ca.y) {
      o = Orientation::kBA;
    } else if (cb.x == ca.x && cb.y == ca.y + 1) {
      o = Orientation::kBOverA;
    } else {
      throw std::invalid_argument("edge is not a honeycomb bond");
    }
    p.edges.push_back({a, b, o});
  }
  p.validate();
  return p;
}

Patch honeycomb_patch(int rows, int cols) {
  Patch p = patch_from_graph(graph::honeycomb_patch(rows, cols));
  p.name = std::to_string(rows) + "x" + std::to_string(cols);
  return p;
}

Patch torus_patch(int lx, int ly, int shift) {
  if (lx < 1 || ly < 1) throw std::invalid_argument("torus size must be positive");
  Patch p;
  p.periodic = true;
  p.name = "torus" + std::to_string(lx) + "x" + std::to_string(ly) + "s" + std::to_string(shift);
  auto wrap = [](int v, int m) { return ((v % m) + m) % m; };
  auto a_id = [&](int x, int y) { return 2 * (wrap(y, ly) * lx + wrap(x, lx)); };
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      for (int b = 0; b < 2; ++b) {
        graph::Vertex v;
        v.sublattice = b ? graph::Sublattice::kB : graph::Sublattice::kA;
        v.has_position = true;
        v.x = x;
        v.y = y;
        p.graph.add_vertex(v);
      }
    }
  }
  auto add = [&](int a, int b, Orientation o) {
    p.graph.add_edge(a, b);
    p.edges.push_back({a, b, o});
  };
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) {
      add(a_id(x, y), a_id(x, y) + 1, Orientation::kAB);
      add(a_id(x + 1, y), a_id(x, y) + 1, Orientation::kBA);
      add(a_id(x, y), a_id(x + shift, y + 1) + 1, Orientation::kBOverA);
    }
  }
  p.validate();
  return p;
}

Patch k33_patch() {
  Patch p = torus_patch(3, 1, 1);
  p.name = "k33";
  return p;
}

Patch torus_2x2_patch() {
  Patch p = torus_patch(2, 2, 0);
  p.name = "torus2x2";
  return p;
}

Patch sub_patch(const Patch& p, const std::vector<int>& sites) {
  Patch out;
  out.name = p.name + "/sub";
  std::map<int, int> pos;
  for (std::size_t k = 0; k < sites.size(); ++k) pos[sites[k]] = static_cast<int>(k);
  if (pos.size() != sites.size()) throw std::invalid_argument("repeated site");
  for (int s : sites) out.graph.add_vertex(p.graph.vertex(s));
  for (const auto& e : p.edges) {
    if (pos.count(e.a) && pos.count(e.b)) {
      out.graph.add_edge(pos[e.a], pos[e.b]);
      out.edges.push_back({pos[e.a], pos[e.b], e.orientation});
    }
  }
  return out;
}

Patch patch_from_name(const std::string& name) {
  if (name == "k33") return k33_patch();
  if (name == "torus2x2") return torus_2x2_patch();
  std::smatch m;
  static const std::regex re("([0-9]+)x([0-9]+)");
  if (std::regex_match(name, m, re)) return honeycomb_patch(std::stoi(m[1]), std::stoi(m[2]));
  throw std::invalid_argument("unknown patch: " + name);
}

std::string to_string(BoundaryMode m) { return m == BoundaryMode::kPlus ? "plus" : "truncated"; }

const std::vector<std::string>& label_patterns() {
  static const std::vector<std::string> rows{"000", "111", "100", "011", "010", "101"};
  return rows;
}

CMat tricluster_projector() {
  CMat p = CMat::Zero(kLabels, 8);
  for (int l = 0; l < kLabels; ++l) p(l, std::stoi(label_patterns()[l], nullptr, 2)) = 1.0;
  return p;
}

std::vector<int> PepsSpec::dims() const {
  std::vector<int> d;
  for (const auto& p : projectors) d.push_back(static_cast<int>(p.rows()));
  return d;
}

void PepsSpec::validate() const {
  patch.validate();
  if (static_cast<int>(projectors.size()) != patch.num_sites()) {
    throw std::invalid_argument("one projector per site required");
  }
  for (int s = 0; s < patch.num_sites(); ++s) {
    const CMat& p = projectors[s];
    if (slots[s].size() > 3 || p.cols() != (Eigen::Index{1} << slots[s].size())) {
      throw std::invalid_argument("projector does not match the site's slots");
    }
    if (!(p * p.adjoint()).isIdentity(1e-10)) {
      throw std::invalid_argument("projector rows are not orthonormal");
    }
    if (slots[s].size() == 3 && p.rows() != kLabels) {
      throw std::invalid_argument("interior projector must have six rows");
    }
  }
}

PepsSpec make_spec(const Patch& patch, BoundaryMode mode) {
  if (patch.num_sites() > kMaxSites) {
    throw std::length_error("tri-cluster patches are limited to 8 sites");
  }
  patch.validate();
  PepsSpec spec;
  spec.patch = patch;
  spec.boundary = mode;
  spec.bond = cbond();
  for (int s = 0; s < patch.num_sites(); ++s) {
    std::vector<int> present;
    if (mode == BoundaryMode::kPlus) {
      present = {0, 1, 2};
    } else {
      for (const auto& e : patch.edges) {
        if (e.a == s) present.push_back(slot_of(false, e.orientation));
        if (e.b == s) present.push_back(slot_of(true, e.orientation));
      }
      std::sort(present.begin(), present.end());
    }
    // Distinct restricted patterns, in order of first appearance.
    std::vector<int> values, rows;
    for (int l = 0; l < kLabels; ++l) {
      int v = 0;
      for (int j : present) v = 2 * v + (label_patterns()[l][j] - '0');
      auto it = std::find(values.begin(), values.end(), v);
      if (it == values.end()) {
        values.push_back(v);
        rows.push_back(static_cast<int>(values.size()) - 1);
      } else {
        rows.push_back(static_cast<int>(it - values.begin()));
      }
    }
    CMat p = CMat::Zero(static_cast<Eigen::Index>(values.size()), Eigen::Index{1} << present.size());
    for (std::size_t r = 0; r < values.size(); ++r) p(static_cast<Eigen::Index>(r), values[r]) = 1.0;
    spec.slots.push_back(present);
    spec.projectors.push_back(p);
    spec.label_row.push_back(rows);
  }
  spec.validate();
  return spec;
}

peps::Network make_network(const PepsSpec& spec, const std::optional<std::vector<int>>& edges) {
  std::vector<int> all(spec.patch.num_sites());
  for (int s = 0; s < spec.patch.num_sites(); ++s) all[s] = s;
  std::vector<int> use;
  if (edges) {
    use = *edges;
  } else {
    for (int e = 0; e < static_cast<int>(spec.patch.edges.size()); ++e) use.push_back(e);
  }
  peps::Network net;
  net.projectors = spec.projectors;
  for (int e : use) {
    const auto& ed = spec.patch.edges.at(e);
    const int sa = local_slot(spec.slots[ed.a], slot_of(false, ed.orientation));
    const int sb = local_slot(spec.slots[ed.b], slot_of(true, ed.orientation));
    net.bonds.push_back({{ed.a, sa}, {ed.b, sb}, spec.bond});
  }
  if (spec.boundary == BoundaryMode::kPlus) {
    for (int s = 0; s < spec.patch.num_sites(); ++s) {
      std::set<int> used;
      for (const auto& ed : spec.patch.edges) {
        if (ed.a == s) used.insert(slot_of(false, ed.orientation));
        if (ed.b == s) used.insert(slot_of(true, ed.orientation));
      }
      for (int j = 0; j < 3; ++j) {
        if (!used.count(j)) net.caps[{s, j}] = gates::ket_plus();
      }
    }
  }
  return net;
}

QuditState build_tricluster(const PepsSpec& spec) {
  spec.validate();
  return peps::contract_state(make_network(spec));
}

QuditState build_tricluster(const Patch& patch, BoundaryMode mode) {
  return build_tricluster(make_spec(patch, mode));
}

void RangeSpace::validate() const {
  const CMat g = basis.adjoint() * basis;
  if (!g.isIdentity(1e-10)) throw std::invalid_argument("range basis is not orthonormal");
}

CMat region_range(const PepsSpec& spec, const std::vector<int>& region, RangeSemantics semantics,
                  const std::optional<std::vector<int>>& edges) {
  if (region.empty()) throw std::invalid_argument("empty region");
  if (semantics == RangeSemantics::kReducedDensity) {
    const QuditState psi = build_tricluster(spec);
    return range_projector(reduced_density(psi, region)).basis;
  }
  const std::vector<int> use = edges ? *edges : internal_edges(spec.patch, region);
  const CMat le = open_leg_range_le(spec, region, use);
  return to_kronecker_rows(le, region_dims(spec, region));
}

RangeSpace neighbor_range(const PepsSpec& spec, std::pair<int, int> pair, Orientation o,
                          RangeSemantics semantics) {
  const int e = spec.patch.edge_index(pair.first, pair.second);
  if (e < 0) throw std::invalid_argument("sites are not nearest neighbors");
  const auto& ed = spec.patch.edges[e];
  if (ed.a != pair.first || ed.orientation != o) {
    throw std::invalid_argument("pair does not have orientation " + to_string(o));
  }
  RangeSpace r;
  r.sites = {ed.a, ed.b};
  r.orientation = o;
  r.basis = region_range(spec, r.sites, semantics, std::vector<int>{e});
  r.rank = static_cast<int>(r.basis.cols());
  return r;
}

RangeSpace bulk_range(Orientation o) {
  RangeSpace r;
  r.sites = {0, 1};
  r.orientation = o;
  r.basis = bulk_pair_range(o);
  r.rank = static_cast<int>(r.basis.cols());
  return r;
}

int site_marginal_rank(const PepsSpec& spec, int site) {
  const QuditState psi = build_tricluster(spec);
  return range_projector(reduced_density(psi, {site})).rank;
}

LocalHamiltonian build_h_tricluster(const PepsSpec& spec) {
  LocalHamiltonian h(spec.dims());
  for (int e = 0; e < static_cast<int>(spec.patch.edges.size()); ++e) {
    const auto& ed = spec.patch.edges[e];
    h.add_complement_projector({ed.a, ed.b},
                               region_range(spec, {ed.a, ed.b}, RangeSemantics::kOpenLegs,
                                            std::vector<int>{e}),
                               to_string(ed.orientation));
  }
  return h;
}

double max_term_residual(const LocalHamiltonian& h, const QuditState& psi) {
  double worst = 0.0;
  for (std::size_t k = 0; k < h.terms().size(); ++k) {
    worst = std::max(worst, h.apply_term(k, psi.amps()).norm());
  }
  return worst;
}

UniquenessReport check_uniqueness_condition(const PepsSpec& spec, const std::vector<int>& region,
                                            const std::map<int, CMat>& replaced) {
  if (region.size() > 4) throw std::length_error("regions are limited to 4 sites");
  if (region.size() < 3) throw std::invalid_argument("region needs 3 or 4 sites");
  if (!spec.patch.graph.is_connected(region)) throw std::invalid_argument("region is not connected");
  const std::vector<int> inner = internal_edges(spec.patch, region);
  const std::vector<int> dims = region_dims(spec, region);

  // Intersection of S_ab (x) I as the kernel of the summed complements,
  // with sites in region order (site 0 fastest).
  LocalHamiltonian sum(dims);
  for (int e : inner) {
    const auto& ed = spec.patch.edges[e];
    const int pa = static_cast<int>(std::find(region.begin(), region.end(), ed.a) - region.begin());
    const int pb = static_cast<int>(std::find(region.begin(), region.end(), ed.b) - region.begin());
    auto it = replaced.find(e);
    const CMat s = it != replaced.end()
                       ? it->second
                       : region_range(spec, {ed.a, ed.b}, RangeSemantics::kOpenLegs,
                                      std::vector<int>{e});
    sum.add_complement_projector({pa, pb}, s);
  }
  const CMat hsum = sum.dense();
  const CMat range = open_leg_range_le(spec, region, inner);
  const KernelCheck kc = compare_kernel(hsum, range);

  UniquenessReport r;
  r.internal_pairs = static_cast<int>(inner.size());
  r.region_rank = static_cast<int>(range.cols());
  r.intersection_rank = kc.kernel_dim;
  r.distance = kc.distance;
  r.holds = r.region_rank == r.intersection_rank && r.distance <= 1e-8;
  return r;
}

PauliFrame predicted_frame(const PepsSpec& spec, const std::vector<int>& choices) {
  const Patch& p = spec.patch;
  PauliFrame f(p.num_sites(), 0);
  for (int s = 0; s < p.num_sites(); ++s) {
    if (choices.at(s) == 0) continue;
    const int flipped = choices[s] - 1;
    for (const auto& e : p.edges) {
      if (e.a == s && slot_of(false, e.orientation) == flipped) f[e.b] ^= 3;
      if (e.b == s && slot_of(true, e.orientation) == flipped) f[e.a] ^= 3;
    }
  }
  return f;
}

std::optional<PauliFrame> search_pauli_frame(const QuditState& projected, const QuditState& target,
                                             double tol) {
  const int n = projected.num_sites();
  if (n > 8) throw std::length_error("frame search is limited to 8 qubits");
  const CMat paulis[4] = {gates::pauli(0), gates::pauli(1), gates::pauli(2), gates::pauli(3)};
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> dims = projected.dims();
    CVec v = projected.amps();
    PauliFrame f(n);
    for (int s = 0; s < n; ++s) {
      f[s] = static_cast<int>((code >> (2 * s)) & 3);
      if (f[s] != 0) apply_local_inplace(dims, v, {s}, paulis[f[s]]);
    }
    if (std::abs(target.amps().dot(v)) >= 1 - tol) return f;
  }
  return std::nullopt;
}

TriReduction reduce_tricluster(const PepsSpec& spec, const QuditState& psi,
                               const std::vector<int>& choices) {
  const int n = spec.patch.num_sites();
  if (static_cast<int>(choices.size()) != n) throw std::invalid_argument("one choice per site");
  std::vector<int> dims = psi.dims();
  CVec v = psi.amps();
  for (int s = 0; s < n; ++s) {
    const int k = choices[s];
    if (k < 0 || k > 2) throw std::invalid_argument("choice must be 0, 1 or 2");
    const int r0 = spec.label_row[s][2 * k];
    const int r1 = spec.label_row[s][2 * k + 1];
    if (r0 == r1) throw std::invalid_argument("site cannot carry a qubit");
    CMat read = CMat::Zero(2, dims[s]);
    read(0, r0) = 1.0;
    read(1, r1) = 1.0;
    v = apply_site_map(dims, v, s, read);
  }
  TriReduction r;
  r.choices = choices;
  r.probability = v.squaredNorm();
  r.projected = QuditState(dims, v);
  r.frame = predicted_frame(spec, choices);
  QuditState corrected = r.projected;
  for (int s = 0; s < n; ++s) {
    if (r.frame[s] != 0) corrected = apply_gate(corrected, {s}, gates::pauli(r.frame[s]));
  }
  r.overlap = fidelity(corrected, build_cluster_state(spec.patch.graph));
  return r;
}

std::vector<Block> ab_blocks(const Patch& p) {
  std::vector<int> owner(p.num_sites(), -1);
  std::vector<Block> blocks;
  for (const auto& e : p.edges) {
    if (e.orientation != Orientation::kAB) continue;
    owner[e.a] = owner[e.b] = static_cast<int>(blocks.size());
    blocks.push_back({e.a, e.b});
  }
  for (int o : owner) {
    if (o < 0) throw std::invalid_argument("patch is not block-decomposable");
  }
  return blocks;
}

MuCheck check_mu(Orientation link, double mu_target) {
  if (link == Orientation::kAB) throw std::invalid_argument("blocks are joined by ba or b-over-a");
  // Sites a1, b1, a2, b2; the link joins a2 to b1.
  peps::Network net;
  net.projectors.assign(4, tricluster_projector());
  const CMat b = cbond();
  net.bonds.push_back({{0, slot_of(false, Orientation::kAB)}, {1, slot_of(true, Orientation::kAB)}, b});
  net.bonds.push_back({{2, slot_of(false, link)}, {1, slot_of(true, link)}, b});
  net.bonds.push_back({{2, slot_of(false, Orientation::kAB)}, {3, slot_of(true, Orientation::kAB)}, b});
  const CMat s4 = orthonormal_basis(peps::contract(net).amplitudes, kRankTol);

  LocalHamiltonian triple({kLabels, kLabels, kLabels, kLabels});
  triple.add_complement_projector({0, 1}, bulk_pair_range(Orientation::kAB));
  triple.add_complement_projector({2, 1}, bulk_pair_range(link));
  triple.add_complement_projector({2, 3}, bulk_pair_range(Orientation::kAB));
  const CMat ht = triple.dense();
  const Eigen::Index d = ht.rows();
  const CMat k = CMat::Identity(d, d) - s4 * s4.adjoint();

  const KernelCheck kc = compare_kernel(ht, s4);
  MuCheck m;
  m.link = link;
  m.range_dim = static_cast<int>(s4.cols());
  m.kernel_dim = kc.kernel_dim;
  m.mu = kc.first_nonzero;
  m.min_difference = min_eigenvalue(ht - mu_target * k);
  m.ok = m.kernel_dim == m.range_dim && kc.distance <= 1e-8 &&
         m.min_difference >= -kOpTol && m.mu >= mu_target - kOpTol;
  return m;
}

LocalHamiltonian build_k_operator(const PepsSpec& spec) {
  const Patch& p = spec.patch;
  const auto blocks = ab_blocks(p);
  std::vector<int> block_of(p.num_sites());
  for (int m = 0; m < static_cast<int>(blocks.size()); ++m) {
    block_of[blocks[m].a] = block_of[blocks[m].b] = m;
  }
  LocalHamiltonian k(spec.dims());
  for (int e = 0; e < static_cast<int>(p.edges.size()); ++e) {
    const auto& ed = p.edges[e];
    if (ed.orientation == Orientation::kAB) continue;
    const Block& bm = blocks[block_of[ed.a]];
    const Block& bn = blocks[block_of[ed.b]];
    const std::vector<int> region{bm.a, bm.b, bn.a, bn.b};
    const std::vector<int> use{p.edge_index(bm.a, bm.b), p.edge_index(bn.a, bn.b), e};
    const CMat le = open_leg_range_le(spec, region, use);
    // Little-endian over region is Kronecker order over the reversed list.
    k.add_complement_projector(reversed(region), le, "k-" + to_string(ed.orientation));
  }
  return k;
}

nlohmann::json GapBoundReport::to_json() const {
  nlohmann::json mu = nlohmann::json::array();
  for (const auto& m : mu_checks) {
    mu.push_back({{"link", tri::to_string(m.link)},
                  {"kernel_dim", m.kernel_dim},
                  {"range_dim", m.range_dim},
                  {"mu", m.mu},
                  {"min_difference", m.min_difference},
                  {"ok", m.ok}});
  }
  return {{"patch", patch},
          {"blocks", blocks},
          {"k_terms", k_terms},
          {"mu_checks", mu},
          {"mu_ok", mu_ok},
          {"k_null_residual", k_null_residual},
          {"k_min_nonzero", k_min_nonzero},
          {"c_ok", c_ok},
          {"h_minus_k8_min", h_minus_k8_min},
          {"eta_ok", eta_ok},
          {"ground_energy", ground_energy},
          {"gap", gap},
          {"unique", unique},
          {"gap_ok", gap_ok}};
}

GapBoundReport gap_bound_checks(const PepsSpec& spec, const GapCheckOptions& opts) {
  GapBoundReport r;
  r.patch = spec.patch.name;
  r.blocks = static_cast<int>(ab_blocks(spec.patch).size());
  if (opts.mu) {
    std::set<Orientation> links;
    for (const auto& e : spec.patch.edges) {
      if (e.orientation != Orientation::kAB) links.insert(e.orientation);
    }
    r.mu_ok = true;
    for (Orientation o : links) {
      r.mu_checks.push_back(check_mu(o));
      r.mu_ok = r.mu_ok && r.mu_checks.back().ok;
    }
  }
  if (!opts.c && !opts.eta && !opts.gap) return r;

  const QuditState psi = build_tricluster(spec);
  const CVec& v = psi.amps();
  const Eigen::Index dim = v.size();
  const LocalHamiltonian h = build_h_tricluster(spec);
  if (opts.c || opts.eta) {
    const LocalHamiltonian k = build_k_operator(spec);
    r.k_terms = static_cast<int>(k.terms().size());
    if (opts.c) {
      CVec kv;
      k.apply(v, kv);
      r.k_null_residual = kv.norm();
      r.k_min_nonzero = lanczos_lowest(k.matvec(), dim, {v}, opts.lanczos).value;
      r.c_ok = r.k_null_residual <= kOpTol && r.k_min_nonzero >= 1.0 / 3 - kEigTol;
    }
    if (opts.eta) {
      LocalHamiltonian d = h;
      d.add(k, -1.0 / 8);
      const double on_psi = d.expectation(v);
      const double rest = lanczos_lowest(d.matvec(), dim, {v}, opts.lanczos).value;
      r.h_minus_k8_min = std::min(on_psi, rest);
      r.eta_ok = r.h_minus_k8_min >= -kOpTol;
    }
  }
  if (opts.gap) {
    // H is a sum of projectors, so H >= 0 and an annihilated psi is a
    // ground state; the gap is the lowest eigenvalue orthogonal to psi.
    r.ground_energy = h.expectation(v);
    const double second = lanczos_lowest(h.matvec(), dim, {v}, opts.lanczos).value;
    r.gap = second - r.ground_energy;
    r.unique = std::abs(r.ground_energy) <= kOpTol && r.gap > 1e-4;
    r.gap_ok = r.unique && r.gap >= 1.0 / 24 - kEigTol;
  }
  return r;
}

}  // namespace qlab::tri
