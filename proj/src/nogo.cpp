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

#include "qlab/nogo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qlab/gates.hpp"
#include "qlab/linalg.hpp"

namespace qlab::nogo {

namespace {

void require_qubits(const std::vector<int>& dims) {
  for (int d : dims) {
    if (d != 2) throw std::invalid_argument("expected qubits");
  }
}

int bit(std::size_t index, int k) { return static_cast<int>((index >> k) & 1U); }

// psi over n qubits reshaped to (sites in mask) x (rest), both
// little-endian in increasing site order.
CMat reshape_cut(const CVec& v, int n, unsigned mask) {
  const int rows_bits = __builtin_popcount(mask);
  CMat m = CMat::Zero(Eigen::Index{1} << rows_bits, Eigen::Index{1} << (n - rows_bits));
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    std::size_t r = 0, c = 0;
    int rb = 0, cb = 0;
    for (int k = 0; k < n; ++k) {
      if (mask & (1U << k)) {
        r |= static_cast<std::size_t>(bit(idx, k)) << rb++;
      } else {
        c |= static_cast<std::size_t>(bit(idx, k)) << cb++;
      }
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v(static_cast<Eigen::Index>(idx));
  }
  return m;
}

double second_singular(const CVec& v, int n, unsigned mask) {
  const RVec s = Eigen::JacobiSVD<CMat>(reshape_cut(v, n, mask)).singularValues();
  return s.size() > 1 ? s(1) : 0.0;
}

// Fixes the global phase so the largest entry is real and positive.
CVec canonical_phase(CVec v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v(k)) > 0) v *= std::conj(v(k)) / std::abs(v(k));
  return v;
}

CVec product_vector(const std::vector<CVec>& alphas) {
  const std::size_t dim = std::size_t{1} << alphas.size();
  CVec out(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    cplx a = 1.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) a *= alphas[k](bit(idx, static_cast<int>(k)));
    out(static_cast<Eigen::Index>(idx)) = a;
  }
  return out;
}

double energy_of(const CMat& h, const CVec& v) { return (v.adjoint() * h * v)(0, 0).real(); }

nlohmann::json vec_json(const CVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

// Row-reduced, then orthonormalized, basis of span(columns of b).
CMat gauge_fixed_basis(const CMat& b) {
  CMat r = b.transpose();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Eigen::Index piv = row;
    double best = 0.0;
    for (Eigen::Index i = row; i < r.rows(); ++i) {
      if (std::abs(r(i, col)) > best) {
        best = std::abs(r(i, col));
        piv = i;
      }
    }
    if (best < 1e-8) continue;
    r.row(row).swap(r.row(piv));
    r.row(row) /= r(row, col);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      if (i != row) r.row(i) -= r(i, col) * r.row(row);
    }
    ++row;
  }
  CMat v = r.transpose();
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index p = 0; p < c; ++p) v.col(c) -= v.col(p).dot(v.col(c)) * v.col(p);
    v.col(c).normalize();
  }
  return v;
}

// V^dag h V for the encoding of (i, j) into reduced site site_map[i].
LocalHamiltonian reduce_hamiltonian(const LocalHamiltonian& h, const CMat& v, int i, int j,
                                    const std::vector<int>& site_map) {
  const int n = static_cast<int>(h.dims().size());
  LocalHamiltonian out(std::vector<int>(static_cast<std::size_t>(n - 1), 2));
  const int m = site_map[static_cast<std::size_t>(i)];
  for (const HamiltonianTerm& t : h.terms()) {
    if (t.sites.size() != 2) throw std::invalid_argument("expected two-body terms");
    const int s0 = t.sites[0], s1 = t.sites[1];
    const bool touch0 = s0 == i || s0 == j, touch1 = s1 == i || s1 == j;
    const CMat d = t.dense();
    if (!touch0 && !touch1) {
      out.add_term({site_map[static_cast<std::size_t>(s0)], site_map[static_cast<std::size_t>(s1)]},
                   d, t.tag);
      continue;
    }
    if (touch0 && touch1) {
      // Acts inside the encoded pair; in (j, i) order swap to (i, j).
      CMat sw = CMat::Identity(4, 4);
      if (s0 != i) {
        sw.setZero();
        sw(0, 0) = sw(1, 2) = sw(2, 1) = sw(3, 3) = 1.0;
      }
      const CMat r = v.adjoint() * sw * d * sw * v;
      if (r.cwiseAbs().maxCoeff() > 1e-12) {
        // A single-qubit term on the encoded site, padded with the identity
        // on another site.
        const int other = m == 0 ? 1 : 0;
        out.add_term({m, other}, gates::kron(r, gates::I2()), t.tag);
      }
      continue;
    }
    // One site in the pair, the other (k) outside.
    const int k = touch0 ? s1 : s0;
    const int inner = touch0 ? s0 : s1;
    // Term on (inner, k) embedded on (i, j, k), Kronecker order.
    CMat t3 = CMat::Zero(8, 8);
    for (int row = 0; row < 8; ++row) {
      for (int col = 0; col < 8; ++col) {
        const int ra = row >> 2, rb = (row >> 1) & 1, rk = row & 1;
        const int ca = col >> 2, cb = (col >> 1) & 1, ck = col & 1;
        const int rin = inner == i ? ra : rb, cin = inner == i ? ca : cb;
        const int rout = inner == i ? rb : ra, cout = inner == i ? cb : ca;
        if (rout != cout) continue;
        const int dr = touch0 ? 2 * rin + rk : 2 * rk + rin;
        const int dc = touch0 ? 2 * cin + ck : 2 * ck + cin;
        t3(row, col) = d(dr, dc);
      }
    }
    const CMat w = gates::kron(v, gates::I2());  // (c, k) -> (i, j, k)
    out.add_term({m, site_map[static_cast<std::size_t>(k)]}, w.adjoint() * t3 * w, t.tag);
  }
  return out;
}

struct PairReduction {
  CMat v;
  std::vector<int> site_map;
  CVec reduced;
};

PairReduction reduce_pair(const QuditState& psi, int i, int j, double rank_tol) {
  const int n = psi.num_sites();
  const RangeResult rr = range_projector(reduced_density(psi, {i, j}), rank_tol);
  if (rr.rank != 2) throw std::invalid_argument("pair marginal is not rank 2");
  PairReduction out;
  out.v = gauge_fixed_basis(rr.basis);
  out.site_map.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.site_map[static_cast<std::size_t>(k)] = k < j ? k : k - 1;
  out.site_map[static_cast<std::size_t>(j)] = out.site_map[static_cast<std::size_t>(i)];
  const int m = out.site_map[static_cast<std::size_t>(i)];
  out.reduced = CVec::Zero(Eigen::Index{1} << (n - 1));
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const int a = bit(idx, i), b = bit(idx, j);
    std::size_t red = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      red |= static_cast<std::size_t>(bit(idx, k)) << out.site_map[static_cast<std::size_t>(k)];
    }
    for (int c = 0; c < 2; ++c) {
      out.reduced(static_cast<Eigen::Index>(red | (static_cast<std::size_t>(c) << m))) +=
          std::conj(out.v(2 * a + b, c)) * psi.amps()(static_cast<Eigen::Index>(idx));
    }
  }
  return out;
}

CVec lift(const CMat& v, int i, int j, const std::vector<int>& site_map, const CVec& red) {
  const int n = static_cast<int>(site_map.size());
  const int m = site_map[static_cast<std::size_t>(i)];
  CVec out = CVec::Zero(Eigen::Index{1} << n);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(out.size()); ++idx) {
    const int a = bit(idx, i), b = bit(idx, j);
    std::size_t r = 0;
    for (int k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      r |= static_cast<std::size_t>(bit(idx, k)) << site_map[static_cast<std::size_t>(k)];
    }
    cplx acc = 0.0;
    for (int c = 0; c < 2; ++c) {
      acc += v(2 * a + b, c) * red(static_cast<Eigen::Index>(r | (static_cast<std::size_t>(c) << m)));
    }
    out(static_cast<Eigen::Index>(idx)) = acc;
  }
  return out;
}

std::vector<CMat> random_invertibles(int n, Rng& rng) {
  std::vector<CMat> ls;
  while (static_cast<int>(ls.size()) < n) {
    CMat l = random_complex_matrix(2, 2, rng);
    if (std::abs(l.determinant()) > 1e-3) ls.push_back(l);
  }
  return ls;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entanglement

RVec schmidt_values(const QuditState& psi, const std::vector<int>& sites) {
  require_qubits(psi.dims());
  unsigned mask = 0;
  for (int s : sites) {
    if (s < 0 || s >= psi.num_sites()) throw std::invalid_argument("site out of range");
    mask |= 1U << s;
  }
  return Eigen::JacobiSVD<CMat>(reshape_cut(psi.amps(), psi.num_sites(), mask)).singularValues();
}

double min_second_schmidt(const QuditState& psi) {
  require_qubits(psi.dims());
  const int n = psi.num_sites();
  if (n < 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  // Cuts containing site 0, excluding the full set.
  for (unsigned mask = 1; mask < (1U << n) - 1; mask += 2) {
    best = std::min(best, second_singular(psi.amps(), n, mask));
  }
  return best;
}

bool genuinely_entangled(const QuditState& psi, double tol) {
  return psi.num_sites() >= 2 && min_second_schmidt(psi) > tol;
}

std::vector<Factor> product_factors(const QuditState& psi, double tol) {
  require_qubits(psi.dims());
  std::vector<Factor> out;
  std::vector<int> sites(static_cast<std::size_t>(psi.num_sites()));
  for (int k = 0; k < psi.num_sites(); ++k) sites[static_cast<std::size_t>(k)] = k;
  CVec rest = psi.amps();
  while (!sites.empty()) {
    const int n = static_cast<int>(sites.size());
    bool split = false;
    // Smallest group containing the first remaining site.
    for (int size = 1; size < n && !split; ++size) {
      for (unsigned mask = 1; mask < (1U << n) && !split; mask += 2) {
        if (__builtin_popcount(mask) != size) continue;
        const CMat m = reshape_cut(rest, n, mask);
        Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RVec s = svd.singularValues();
        if (s.size() > 1 && s(1) > tol) continue;
        Factor f;
        std::vector<int> remaining;
        for (int k = 0; k < n; ++k) {
          (mask & (1U << k) ? f.sites : remaining).push_back(sites[static_cast<std::size_t>(k)]);
        }
        f.vec = canonical_phase(svd.matrixU().col(0));
        const cplx phase = f.vec.dot(m * svd.matrixV().col(0)) / s(0);
        rest = s(0) * phase * svd.matrixV().col(0).conjugate();
        out.push_back(std::move(f));
        sites = std::move(remaining);
        split = true;
      }
    }
    if (!split) {
      out.push_back(Factor{sites, rest});
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    return a.sites.size() != b.sites.size() ? a.sites.size() < b.sites.size() : a.sites < b.sites;
  });
  return out;
}

// ---------------------------------------------------------------------------
// H_psi and ground spaces

std::vector<std::pair<std::pair<int, int>, int>> pair_ranks(const QuditState& psi,
                                                            double rank_tol) {
  require_qubits(psi.dims());
  std::vector<std::pair<std::pair<int, int>, int>> out;
  for (int i = 0; i < psi.num_sites(); ++i) {
    for (int j = i + 1; j < psi.num_sites(); ++j) {
      out.push_back({{i, j}, range_projector(reduced_density(psi, {i, j}), rank_tol).rank});
    }
  }
  return out;
}

LocalHamiltonian build_h_psi(const QuditState& psi, double rank_tol) {
  require_qubits(psi.dims());
  const int n = psi.num_sites();
  if (n < kMinQubits || n > kMaxQubits) throw std::invalid_argument("need 2..6 qubits");
  LocalHamiltonian h(psi.dims());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const RangeResult rr = range_projector(reduced_density(psi, {i, j}), rank_tol);
      if (rr.rank == 4) continue;
      h.add_complement_projector({i, j}, rr.basis, std::to_string(i) + "," + std::to_string(j));
    }
  }
  return h;
}

GroundSpace ground_space(const LocalHamiltonian& h, double threshold) {
  GroundSpace g;
  g.threshold = threshold;
  g.basis = low_eigenspace(h.dense(), threshold);
  return g;
}

// ---------------------------------------------------------------------------
// SLOCC

QuditState slocc_transform(const QuditState& psi, const std::vector<CMat>& ls) {
  require_qubits(psi.dims());
  if (static_cast<int>(ls.size()) != psi.num_sites()) throw std::invalid_argument("one L per qubit");
  CVec v = psi.amps();
  for (int k = 0; k < psi.num_sites(); ++k) {
    const CMat& l = ls[static_cast<std::size_t>(k)];
    if (l.rows() != 2 || l.cols() != 2) throw std::invalid_argument("L must be 2 x 2");
    if (std::abs(l.determinant()) <= 1e-10) throw std::invalid_argument("singular L");
    apply_local_inplace(psi.dims(), v, {k}, l);
  }
  return QuditState(psi.dims(), v);
}

LocalHamiltonian conjugate_hamiltonian(const LocalHamiltonian& h, const std::vector<CMat>& ls) {
  if (ls.size() != h.dims().size()) throw std::invalid_argument("one L per qubit");
  LocalHamiltonian out(h.dims());
  for (const HamiltonianTerm& t : h.terms()) {
    CMat l = CMat::Identity(1, 1);
    for (int s : t.sites) l = gates::kron(l, ls[static_cast<std::size_t>(s)]);
    const CMat c = l.adjoint() * t.dense() * l;
    out.add_term(t.sites, (c + c.adjoint()) / 2.0, t.tag);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isometry reduction

Rank2Reduction rank2_pair_reduce(const QuditState& psi, std::pair<int, int> pair,
                                 double rank_tol) {
  auto [i, j] = pair;
  if (i > j) std::swap(i, j);
  if (i == j || i < 0 || j >= psi.num_sites()) throw std::invalid_argument("bad pair");
  const PairReduction pr = reduce_pair(psi, i, j, rank_tol);
  Rank2Reduction out;
  out.pair = {i, j};
  out.isometry = pr.v;
  out.site_map = pr.site_map;
  out.reduced = QuditState(std::vector<int>(static_cast<std::size_t>(psi.num_sites() - 1), 2),
                           pr.reduced);
  out.reduced_h = reduce_hamiltonian(build_h_psi(psi, rank_tol), pr.v, i, j, pr.site_map);
  return out;
}

CVec lift_reduced(const Rank2Reduction& r, const CVec& reduced_vec) {
  return lift(r.isometry, r.pair.first, r.pair.second, r.site_map, reduced_vec);
}

// ---------------------------------------------------------------------------
// Product search

std::string to_string(SearchStrategy s) {
  return s == SearchStrategy::kGridPolish ? "grid+polish" : "rank2-isometry-reduction";
}

SearchStrategy search_strategy_from_string(const std::string& s) {
  if (s == "grid+polish") return SearchStrategy::kGridPolish;
  if (s == "rank2-isometry-reduction") return SearchStrategy::kRank2Reduction;
  throw std::invalid_argument("unknown strategy: " + s);
}

std::vector<CVec> bloch_grid() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double pts[12][3] = {{0, 1, phi},  {0, -1, phi},  {0, 1, -phi},  {0, -1, -phi},
                             {1, phi, 0},  {-1, phi, 0},  {1, -phi, 0},  {-1, -phi, 0},
                             {phi, 0, 1},  {-phi, 0, 1},  {phi, 0, -1},  {-phi, 0, -1}};
  std::vector<CVec> out;
  for (const auto& p : pts) {
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    const double theta = std::acos(p[2] / r);
    const double az = std::atan2(p[1], p[0]);
    CVec v(2);
    v << std::cos(theta / 2), std::polar(std::sin(theta / 2), az);
    out.push_back(v);
  }
  return out;
}

int ProductSearch::max_factor_size() const {
  std::size_t m = 0;
  for (const Factor& f : factors) m = std::max(m, f.sites.size());
  return static_cast<int>(m);
}

nlohmann::json ProductSearch::to_json() const {
  nlohmann::json j;
  j["found"] = found;
  j["strategy"] = to_string(strategy);
  j["energy"] = energy;
  j["iterations"] = iterations;
  j["seeds"] = seeds;
  j["reduced_pairs"] = reduced_pairs;
  nlohmann::json fs = nlohmann::json::array();
  for (const Factor& f : factors) fs.push_back({{"sites", f.sites}, {"vector", vec_json(f.vec)}});
  j["factors"] = fs;
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  return j;
}

ProductSearch find_product_ground_state(const LocalHamiltonian& h, Rng& rng,
                                        const SearchOptions& opts) {
  require_qubits(h.dims());
  const int n = static_cast<int>(h.dims().size());
  if (n < 1 || n > kMaxSearchQubits) throw std::invalid_argument("search needs 1..5 qubits");
  const CMat hd = h.dense();
  const std::vector<CVec> grid = bloch_grid();
  ProductSearch out;
  out.energy = std::numeric_limits<double>::infinity();
  std::vector<CVec> best;
  while (out.iterations < opts.budget) {
    std::vector<CVec> alphas(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const std::size_t g = out.seeds < 12 ? static_cast<std::size_t>(out.seeds)
                                           : static_cast<std::size_t>(rng.uniform_int(12));
      alphas[static_cast<std::size_t>(k)] = grid[g];
    }
    ++out.seeds;
    double e = energy_of(hd, product_vector(alphas));
    while (out.iterations < opts.budget && e > opts.tol) {
      for (int k = 0; k < n && out.iterations < opts.budget; ++k) {
        CMat basis(hd.rows(), 2);
        for (int b = 0; b < 2; ++b) {
          alphas[static_cast<std::size_t>(k)] = b == 0 ? gates::ket0() : gates::ket1();
          basis.col(b) = product_vector(alphas);
        }
        const CMat m = basis.adjoint() * hd * basis;
        Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
        alphas[static_cast<std::size_t>(k)] = canonical_phase(es.eigenvectors().col(0));
        ++out.iterations;
      }
      const double next = energy_of(hd, product_vector(alphas));
      const bool stuck = e - next <= 1e-6 * e;
      e = next;
      if (stuck) break;
    }
    if (e < out.energy) {
      out.energy = e;
      best = alphas;
    }
    if (out.energy <= opts.tol) break;
  }
  out.found = out.energy <= opts.tol;
  if (out.found) {
    out.state = product_vector(best);
    for (int k = 0; k < n; ++k) out.factors.push_back(Factor{{k}, best[static_cast<std::size_t>(k)]});
  } else {
    std::ostringstream os;
    os << "budget exhausted after " << out.seeds << " seeds; best energy " << out.energy;
    out.diagnostics = os.str();
  }
  return out;
}

ProductSearch find_product_ground_state(const QuditState& psi, SearchStrategy strategy, Rng& rng,
                                        const SearchOptions& opts) {
  const LocalHamiltonian h_psi = build_h_psi(psi);
  if (psi.num_sites() > kMaxSearchQubits) throw std::invalid_argument("search needs <= 5 qubits");
  if (strategy == SearchStrategy::kGridPolish) {
    ProductSearch out = find_product_ground_state(h_psi, rng, opts);
    out.strategy = strategy;
    return out;
  }
  // Encode rank-2 pairs while at least four qubits remain, carrying the
  // reduced Hamiltonian V^dag H V and the reduced state along.
  struct Level {
    CMat v;
    int i, j;
    std::vector<int> site_map;
  };
  std::vector<Level> levels;
  std::vector<int> label(static_cast<std::size_t>(psi.num_sites()));
  for (int k = 0; k < psi.num_sites(); ++k) label[static_cast<std::size_t>(k)] = k;
  QuditState cur = psi;
  LocalHamiltonian h = h_psi;
  std::vector<std::pair<int, int>> pairs;
  while (cur.num_sites() >= 4) {
    std::optional<std::pair<int, int>> pick;
    for (const auto& [p, rank] : pair_ranks(cur)) {
      if (rank == 2) {
        pick = p;
        break;
      }
    }
    if (!pick) break;
    const auto [i, j] = *pick;
    const PairReduction pr = reduce_pair(cur, i, j, kRankTol);
    h = reduce_hamiltonian(h, pr.v, i, j, pr.site_map);
    cur = QuditState(std::vector<int>(static_cast<std::size_t>(cur.num_sites() - 1), 2), pr.reduced);
    pairs.push_back({label[static_cast<std::size_t>(i)], label[static_cast<std::size_t>(j)]});
    std::vector<int> next(static_cast<std::size_t>(cur.num_sites()), std::numeric_limits<int>::max());
    for (std::size_t k = 0; k < label.size(); ++k) {
      int& slot = next[static_cast<std::size_t>(pr.site_map[k])];
      slot = std::min(slot, label[k]);
    }
    label = std::move(next);
    levels.push_back(Level{pr.v, i, j, pr.site_map});
  }
  ProductSearch out = find_product_ground_state(h, rng, opts);
  out.strategy = strategy;
  out.reduced_pairs = pairs;
  if (!out.found) return out;
  CVec state = out.state;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    state = lift(it->v, it->i, it->j, it->site_map, state);
  }
  out.state = state;
  out.energy = std::max(0.0, h_psi.expectation(state));
  out.found = out.energy <= opts.tol;
  out.factors = product_factors(QuditState(psi.dims(), state));
  return out;
}

// ---------------------------------------------------------------------------
// Test states and reports

QuditState ghz_state(int n) {
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  v(0) = v(v.size() - 1) = 1.0;
  return QuditState(std::vector<int>(static_cast<std::size_t>(n), 2), v);
}

QuditState w_state(int n) {
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  for (int k = 0; k < n; ++k) v(Eigen::Index{1} << k) = 1.0;
  return QuditState(std::vector<int>(static_cast<std::size_t>(n), 2), v);
}

TestState random_entangled_state(int n, Rng& rng) {
  if (n < 3 || n > kMaxQubits) throw std::invalid_argument("need 3..6 qubits");
  static const char* kFamilies[] = {"haar", "mps", "ghz-slocc", "w-slocc"};
  const std::vector<int> dims(static_cast<std::size_t>(n), 2);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int f = static_cast<int>(rng.uniform_int(4));
    QuditState psi;
    if (f == 0) {
      psi = QuditState(dims, random_state_vector(Eigen::Index{1} << n, rng));
    } else if (f == 1) {
      std::vector<std::array<CMat, 2>> a(static_cast<std::size_t>(n));
      for (auto& t : a) t = {random_complex_matrix(2, 2, rng), random_complex_matrix(2, 2, rng)};
      const CMat left = random_complex_matrix(1, 2, rng), right = random_complex_matrix(2, 1, rng);
      CVec v(Eigen::Index{1} << n);
      for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
        CMat acc = left;
        for (int k = 0; k < n; ++k) acc = acc * a[static_cast<std::size_t>(k)][bit(idx, k)];
        v(static_cast<Eigen::Index>(idx)) = (acc * right)(0, 0);
      }
      psi = QuditState(dims, v);
    } else {
      psi = slocc_transform(f == 2 ? ghz_state(n) : w_state(n), random_invertibles(n, rng));
    }
    if (genuinely_entangled(psi)) return TestState{psi, kFamilies[f]};
  }
  throw std::runtime_error("no genuinely entangled state drawn");
}

LocalHamiltonian random_compatible_hamiltonian(const QuditState& psi, Rng& rng) {
  LocalHamiltonian h(psi.dims());
  for (int i = 0; i < psi.num_sites(); ++i) {
    for (int j = i + 1; j < psi.num_sites(); ++j) {
      const RangeResult rr = range_projector(reduced_density(psi, {i, j}));
      if (rr.rank == 4 || rng.uniform() < 0.3) continue;
      const CMat kernel = orthonormal_basis(CMat::Identity(4, 4) - rr.projector);
      const auto k = static_cast<Eigen::Index>(1 + rng.uniform_int(static_cast<std::uint64_t>(kernel.cols())));
      const CMat sub = orthonormal_basis(kernel * random_complex_matrix(kernel.cols(), k, rng));
      h.add_term({i, j}, sub * sub.adjoint(), "", 0.5 + rng.uniform());
    }
  }
  return h;
}

nlohmann::json NogoReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["genuinely_entangled"] = genuinely_entangled;
  j["min_second_schmidt"] = min_second_schmidt;
  nlohmann::json pr = nlohmann::json::array();
  for (const auto& [p, r] : pair_ranks) pr.push_back({{"pair", {p.first, p.second}}, {"rank", r}});
  j["pair_ranks"] = pr;
  j["psi_energy"] = psi_energy;
  j["ground_dim"] = ground_dim;
  j["product_search"] = search.to_json();
  j["ok"] = ok;
  return j;
}

NogoReport check_nogo(const QuditState& psi, Rng& rng, const SearchOptions& opts) {
  NogoReport r;
  r.n = psi.num_sites();
  const LocalHamiltonian h = build_h_psi(psi);
  if (r.n > kMaxSearchQubits) throw std::invalid_argument("search needs <= 5 qubits");
  r.min_second_schmidt = min_second_schmidt(psi);
  r.genuinely_entangled = r.min_second_schmidt > kSchmidtTol;
  r.pair_ranks = pair_ranks(psi);
  r.psi_energy = std::max(0.0, h.expectation(psi.amps()));
  r.ground_dim = ground_space(h).dim();
  r.search = find_product_ground_state(psi, SearchStrategy::kGridPolish, rng, opts);
  if (!r.search.found) {
    r.search = find_product_ground_state(psi, SearchStrategy::kRank2Reduction, rng, opts);
  }
  r.ok = r.search.found && (!r.genuinely_entangled || r.ground_dim >= 2);
  return r;
}

QuditState state_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("amplitudes")) {
    throw std::invalid_argument("state needs n and amplitudes");
  }
  const int n = j.at("n").get<int>();
  if (n < kMinQubits || n > kMaxQubits) throw std::invalid_argument("need 2..6 qubits");
  const auto& a = j.at("amplitudes");
  if (!a.is_array() || a.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("expected 2^n amplitudes");
  }
  CVec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& z = a[k];
    v(static_cast<Eigen::Index>(k)) =
        z.is_array() ? cplx(z.at(0).get<double>(), z.at(1).get<double>()) : cplx(z.get<double>(), 0.0);
  }
  if (v.norm() < 1e-12) throw std::invalid_argument("zero state");
  return QuditState(std::vector<int>(static_cast<std::size_t>(n), 2), v);
}

nlohmann::json state_to_json(const QuditState& psi) {
  return {{"n", psi.num_sites()}, {"amplitudes", vec_json(psi.amps())}};
}

}  // namespace qlab::nogo
