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

#include "qlab/vbs1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlab/cluster.hpp"
#include "qlab/gates.hpp"
#include "qlab/graph.hpp"
#include "qlab/spin.hpp"

namespace qlab::vbs {

namespace {

const double kSqrtHalf = std::sqrt(0.5);

const char* kAkltLabels[3] = {"X", "Y", "Z"};

// Outcome 0 = failure, 1 = success for a keep set of labels over a basis
// whose rows are the label states.
std::vector<CMat> keep_projectors(const CMat& basis_rows, const std::vector<int>& keep) {
  const Eigen::Index d = basis_rows.cols();
  CMat keep_p = CMat::Zero(d, d);
  for (int a : keep) {
    const CVec v = basis_rows.row(a).transpose();
    keep_p += v * v.adjoint();
  }
  return {CMat::Identity(d, d) - keep_p, keep_p};
}

std::vector<int> complement(const std::vector<int>& keep, int d) {
  std::vector<int> out;
  for (int a = 0; a < d; ++a) {
    if (std::find(keep.begin(), keep.end(), a) == keep.end()) out.push_back(a);
  }
  return out;
}

std::vector<std::string> label_names(const std::vector<int>& idx,
                                     const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (int a : idx) out.push_back(labels[a]);
  return out;
}

// State of the cluster chain on s qubits; s = 0 gives the scalar 1.
CVec cluster_chain_vector(int s) {
  if (s == 0) return CVec::Ones(1);
  return build_cluster_state(graph::chain(s)).amps();
}

// Result of turning a reduced table into local maps. Maps act on the label
// basis of the MPS (the caller composes them with any basis change).
struct TableFrame {
  bool ok = false;
  CVec left_row;   // contracts the left boundary qubit
  CVec right_row;  // contracts the right boundary qubit
  std::map<int, CMat> live_maps;   // site -> 2 x d
  std::map<int, CMat> fixed_rows;  // site -> 1 x d
};

// Reads a table whose live columns should span {H, HZ}. Each entry matrix
// M_e = a_e H + b_e HZ gives qubit vectors u0 = sum a_e phys_e and
// u1 = sum b_e phys_e; these must be orthogonal with equal norms.
TableFrame read_table(const mps::Tabular& t) {
  TableFrame f;
  const CMat h = gates::H();
  const CMat hz = gates::H() * gates::Z();
  for (const auto& col : t.columns()) {
    const int d = static_cast<int>(col.entries.front().phys.size());
    CVec u0 = CVec::Zero(d), u1 = CVec::Zero(d);
    for (const auto& e : col.entries) {
      const cplx a = (h.adjoint() * e.mat).trace() / 2.0;
      const cplx b = (hz.adjoint() * e.mat).trace() / 2.0;
      if ((e.mat - a * h - b * hz).norm() > 1e-10) return f;
      u0 += a * e.phys;
      u1 += b * e.phys;
    }
    const double n0 = u0.norm(), n1 = u1.norm();
    if (n0 < 1e-10 || std::abs(n0 - n1) > 1e-10 * n0 || std::abs(u0.dot(u1)) > 1e-10 * n0 * n1) {
      return f;
    }
    CMat m(2, d);
    m.row(0) = u0.adjoint() / n0;
    m.row(1) = u1.adjoint() / n1;
    // The {H, HZ} table is the cluster chain with H on every site.
    f.live_maps[col.site] = h * m;
  }
  for (const auto& [site, w] : t.fixed()) f.fixed_rows[site] = w.adjoint() / w.norm();
  const CVec plus = gates::ket_plus();
  f.left_row = t.left().inverse() * plus;
  f.right_row = t.right().inverse().row(0).transpose();
  f.ok = true;
  return f;
}

// Applies per-site maps to a raw vector; dims are updated in place.
CVec apply_maps(std::vector<int>& dims, CVec v, const std::vector<CMat>& maps) {
  for (std::size_t s = 0; s < maps.size(); ++s) {
    v = apply_site_map(dims, v, static_cast<int>(s), maps[s]);
  }
  return v;
}

double overlap_with_cluster(const CVec& v, int s) {
  const double nv = v.norm();
  if (nv < 1e-12) return 0.0;
  const CVec c = cluster_chain_vector(s);
  if (c.size() != v.size()) return 0.0;
  return std::abs(c.dot(v)) / nv;
}

// Gauge steps shared by the AKLT reduction and the protocol search.
void first_gauge(mps::Tabular& t, const CMat& g) {
  for (int k = 0; k < t.num_columns(); k += 2) t.gauge_insert(k, g);
}

void absorb_singles(mps::Tabular& t) {
  int k = 0;
  while (k < t.num_columns()) {
    if (t.column(k).entries.size() == 1) {
      t.absorb_single(k);
    } else {
      ++k;
    }
  }
}

void second_gauge(mps::Tabular& t, const CMat& c) {
  if (t.num_columns() == 0) return;
  for (int k = -1; k < t.num_columns(); k += 2) t.gauge_insert(k, c);
}

}  // namespace

CMat bond_matrix(BondKind kind) {
  CMat b(2, 2);
  switch (kind) {
    case BondKind::kSinglet:
      b << 0, kSqrtHalf, -kSqrtHalf, 0;
      break;
    case BondKind::kCBond:
      b << 0.5, 0.5, 0.5, -0.5;
      break;
    case BondKind::kBond:
      b << kSqrtHalf, 0, 0, kSqrtHalf;
      break;
  }
  return b;
}

std::string to_string(BondKind kind) {
  switch (kind) {
    case BondKind::kSinglet:
      return "singlet";
    case BondKind::kCBond:
      return "cbond";
    case BondKind::kBond:
      return "bond";
  }
  return "";
}

BondKind bond_kind_from_string(const std::string& s) {
  if (s == "singlet") return BondKind::kSinglet;
  if (s == "cbond") return BondKind::kCBond;
  if (s == "bond") return BondKind::kBond;
  throw std::invalid_argument("unknown bond kind " + s);
}

void BondProjectorSpec::validate() const {
  if (projector.cols() != 4 || projector.rows() < 1 || projector.rows() > 4) {
    throw std::invalid_argument("projector must be d x 4 with 1 <= d <= 4");
  }
  const Eigen::Index d = projector.rows();
  if ((projector * projector.adjoint() - CMat::Identity(d, d)).norm() > 1e-10) {
    throw std::invalid_argument("projector rows must be orthonormal");
  }
}

QuditState build_vbs(int n, const BondProjectorSpec& spec, BoundaryMode mode) {
  if (n < 1) throw std::invalid_argument("chain length must be positive");
  spec.validate();
  const Eigen::Index d = spec.projector.rows();
  std::vector<int> dims;
  if (mode == BoundaryMode::kExposed) dims.push_back(2);
  for (int j = 0; j < n; ++j) dims.push_back(static_cast<int>(d));
  if (mode == BoundaryMode::kExposed) dims.push_back(2);
  total_dimension(dims);

  const CMat b = bond_matrix(spec.bond);
  std::vector<CMat> p(d, CMat(2, 2));
  for (Eigen::Index m = 0; m < d; ++m) {
    for (int l = 0; l < 2; ++l) {
      for (int r = 0; r < 2; ++r) p[m](l, r) = spec.projector(m, 2 * l + r);
    }
  }
  // Rows: physical configurations so far; columns: the open virtual qubit.
  CMat t;
  if (mode == BoundaryMode::kExposed) {
    t = b;
  } else {
    t = gates::ket_plus().transpose();
  }
  for (int j = 0; j < n; ++j) {
    const Eigen::Index rows = t.rows();
    CMat next(rows * d, 2);
    for (Eigen::Index m = 0; m < d; ++m) next.middleRows(m * rows, rows) = t * p[m];
    t = std::move(next);
    if (j + 1 < n) t = t * b;
  }
  const CMat f = mode == BoundaryMode::kExposed ? CMat(t * b) : CMat(t * gates::ket_plus());
  return QuditState(dims, Eigen::Map<const CVec>(f.data(), f.size()));
}

BondProjectorSpec cluster_projector_spec() {
  CMat p = CMat::Zero(2, 4);
  p(0, 0) = 1;
  p(1, 3) = 1;
  return {BondKind::kCBond, p};
}

BondProjectorSpec cluster_projector_flip_spec() {
  CMat p = CMat::Zero(2, 4);
  p(0, 1) = 1;
  p(1, 2) = 1;
  return {BondKind::kCBond, p};
}

BondProjectorSpec spin32_projector_spec() {
  CMat p = CMat::Zero(4, 4);
  p(0, 0) = 1;
  p(1, 3) = 1;
  p(2, 1) = 1;
  p(3, 2) = 1;
  return {BondKind::kCBond, p};
}

BondProjectorSpec aklt_projector_spec() { return {BondKind::kSinglet, symmetric_isometry(2)}; }

CMat aklt_label_basis() {
  CMat v(3, 3);
  v << kSqrtHalf, 0, -kSqrtHalf,
       cplx(0, kSqrtHalf), 0, cplx(0, kSqrtHalf),
       0, 1, 0;
  return v;
}

CMat aklt_left_boundary_map() { return gates::Z(); }
CMat aklt_right_boundary_map() { return gates::X(); }

OutcomeSelector SuccessSource::next(std::size_t k) const {
  if (rng_) return OutcomeSelector(*rng_);
  if (k >= forced_.size()) throw std::invalid_argument("not enough forced outcomes");
  return OutcomeSelector(forced_[k]);
}

QuditState ReductionFrame::apply(const QuditState& post) const {
  if (static_cast<int>(site_maps.size()) != post.num_sites()) {
    throw std::invalid_argument("frame does not match the chain");
  }
  std::vector<int> dims = post.dims();
  CVec v = apply_maps(dims, post.amps(), site_maps);
  return drop_unit_sites(QuditState(dims, v));
}

ReductionResult reduce_aklt_to_cluster(int n, const SuccessSource& outcomes) {
  if (n < 1) throw std::invalid_argument("chain length must be positive");
  const std::vector<std::string> labels{kAkltLabels[0], kAkltLabels[1], kAkltLabels[2]};
  const CMat v = aklt_label_basis();
  const std::vector<int> keep_m1{1, 2}, keep_m2{1, 0};

  ReductionResult r;
  QuditState psi = build_vbs(n, aklt_projector_spec(), BoundaryMode::kExposed);
  auto t = mps::Tabular::from_mps(mps::with_free_boundaries(n, mps::aklt_matrices()), labels);
  first_gauge(t, gates::Y());

  ReductionMeasurement cur = ReductionMeasurement::kM1;
  for (int j = 0; j < n; ++j) {
    const auto& keep = cur == ReductionMeasurement::kM1 ? keep_m1 : keep_m2;
    const auto res = measure(psi, j + 1, keep_projectors(v, keep), outcomes.next(j));
    ReductionStep step;
    step.site = j + 1;
    step.measurement = cur;
    step.success = res.outcome == 1;
    step.probability = res.probability;
    step.kept = label_names(step.success ? keep : complement(keep, 3), labels);
    t.measure_delete(j, step.kept);
    r.transcript.push_back(step);
    psi = res.post_state;
    if (step.success) {
      cur = cur == ReductionMeasurement::kM1 ? ReductionMeasurement::kM2 : ReductionMeasurement::kM1;
    }
  }
  absorb_singles(t);
  second_gauge(t, gates::H());
  const TableFrame tf = read_table(t);
  if (!tf.ok) throw std::logic_error("reduced table is not of cluster form");

  r.post_state = psi;
  r.cluster_length = t.num_columns();
  const CMat to_labels = v.conjugate();
  r.frame.site_maps.push_back(tf.left_row.transpose() * aklt_left_boundary_map());
  for (int j = 0; j < n; ++j) {
    auto it = tf.live_maps.find(j);
    if (it != tf.live_maps.end()) {
      r.frame.site_maps.push_back(it->second * to_labels);
      r.frame.logical_sites.push_back(j + 1);
    } else {
      r.frame.site_maps.push_back(tf.fixed_rows.at(j) * to_labels);
    }
  }
  r.frame.site_maps.push_back(tf.right_row.transpose() * aklt_right_boundary_map());

  std::vector<int> dims = psi.dims();
  const CVec corrected = apply_maps(dims, psi.amps(), r.frame.site_maps);
  r.overlap = overlap_with_cluster(corrected, r.cluster_length);
  return r;
}

BranchSummary enumerate_aklt_branches(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("branch enumeration supports 1 <= n <= 10");
  BranchSummary s;
  s.n = n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> forced(n);
    for (int j = 0; j < n; ++j) forced[j] = (mask >> j) & 1;
    const auto r = reduce_aklt_to_cluster(n, SuccessSource(forced));
    double p = 1.0;
    for (const auto& step : r.transcript) {
      p *= step.probability;
      const double ps = step.success ? step.probability : 1.0 - step.probability;
      s.min_success_probability = std::min(s.min_success_probability, ps);
      s.max_success_probability = std::max(s.max_success_probability, ps);
    }
    ++s.branches;
    s.total_probability += p;
    s.expected_cluster_length += p * r.cluster_length;
    s.min_overlap = std::min(s.min_overlap, r.overlap);
  }
  s.sites_per_qubit = n / s.expected_cluster_length;
  return s;
}

nlohmann::json to_json(const ReductionResult& r) {
  nlohmann::json j;
  j["cluster_length"] = r.cluster_length;
  j["overlap"] = r.overlap;
  j["logical_sites"] = r.frame.logical_sites;
  j["boundary"] = "projected-boundary-qubits";
  j["steps"] = nlohmann::json::array();
  for (const auto& s : r.transcript) {
    j["steps"].push_back({{"site", s.site},
                          {"measurement", s.measurement == ReductionMeasurement::kM1 ? "M1" : "M2"},
                          {"success", s.success},
                          {"probability", s.probability},
                          {"kept", s.kept}});
  }
  return j;
}

double run_protocol_branch(const std::vector<CMat>& family, const ProtocolCandidate& p,
                           const std::vector<int>& successes) {
  const int n = static_cast<int>(successes.size());
  const int d = static_cast<int>(family.size());
  const auto m = mps::with_free_boundaries(n, family);
  QuditState psi = mps::mps_to_state(m);
  std::vector<std::string> labels;
  for (int a = 0; a < d; ++a) labels.push_back(std::to_string(a));
  auto t = mps::Tabular::from_mps(m, labels);
  first_gauge(t, p.first_gauge);
  const CMat basis = CMat::Identity(d, d);
  bool use_first = true;
  for (int j = 0; j < n; ++j) {
    const auto& keep = use_first ? p.keep1 : p.keep2;
    const auto probs = outcome_probabilities(psi, j + 1, keep_projectors(basis, keep));
    if (probs[successes[j]] < 1e-12) return -2.0;  // branch never occurs
    psi = measure(psi, j + 1, keep_projectors(basis, keep), successes[j]).post_state;
    t.measure_delete(j, label_names(successes[j] ? keep : complement(keep, d), labels));
    if (successes[j]) use_first = !use_first;
  }
  absorb_singles(t);
  second_gauge(t, p.second_gauge);
  const TableFrame tf = read_table(t);
  if (!tf.ok) return -1.0;
  std::vector<CMat> maps{tf.left_row.transpose()};
  for (int j = 0; j < n; ++j) {
    auto it = tf.live_maps.find(j);
    maps.push_back(it != tf.live_maps.end() ? it->second : tf.fixed_rows.at(j));
  }
  maps.push_back(tf.right_row.transpose());
  std::vector<int> dims = psi.dims();
  return overlap_with_cluster(apply_maps(dims, psi.amps(), maps), t.num_columns());
}

ProtocolSearchResult search_reduction_protocol(const std::vector<CMat>& family, int n) {
  const int d = static_cast<int>(family.size());
  std::vector<std::vector<int>> keeps;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) keeps.push_back({a, b});
  }
  const auto cliffords = gates::clifford_group();
  ProtocolSearchResult res;
  for (const auto& g : cliffords) {
    for (const auto& c : cliffords) {
      for (const auto& k1 : keeps) {
        for (const auto& k2 : keeps) {
          ProtocolCandidate cand{g, c, k1, k2};
          ++res.candidates_tried;
          double worst = 1.0;
          for (int mask = 0; mask < (1 << n) && worst > 1 - 1e-9; ++mask) {
            std::vector<int> s(n);
            for (int j = 0; j < n; ++j) s[j] = (mask >> j) & 1;
            const double ov = run_protocol_branch(family, cand, s);
            if (ov == -2.0) continue;
            worst = std::min(worst, ov);
          }
          if (worst > 1 - 1e-9) {
            res.found = true;
            res.protocol = cand;
            res.min_overlap = worst;
            return res;
          }
        }
      }
    }
  }
  return res;
}

LocalHamiltonian aklt_hamiltonian(int n, bool with_boundary) {
  if (n < 1) throw std::invalid_argument("chain length must be positive");
  const SpinOps s1 = spin_ops_from_map(symmetric_isometry(2));
  const SpinOps half = spin_ops(1);
  std::vector<int> dims;
  const int off = with_boundary ? 1 : 0;
  if (with_boundary) dims.push_back(2);
  for (int j = 0; j < n; ++j) dims.push_back(3);
  if (with_boundary) dims.push_back(2);
  LocalHamiltonian h(dims);
  const CMat ss = spin_dot(s1, s1);
  const CMat bulk = ss + ss * ss / 3.0;
  for (int j = 0; j + 1 < n; ++j) h.add_term({off + j, off + j + 1}, bulk, "bulk");
  if (with_boundary) {
    h.add_term({0, 1}, spin_dot(half, s1), "left");
    h.add_term({n, n + 1}, spin_dot(s1, half), "right");
  }
  return h;
}

double aklt_bulk_term_minimum() { return -2.0 / 3.0; }
double aklt_boundary_term_minimum() { return -1.0; }

FrustrationCheck check_frustration_free(const LocalHamiltonian& h, const QuditState& psi) {
  FrustrationCheck c;
  for (std::size_t k = 0; k < h.terms().size(); ++k) {
    const CMat m = h.terms()[k].dense();
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues()(0);
    c.ground_energy += emin;
    const CVec hv = h.apply_term(k, psi.amps());
    c.max_term_residual = std::max(c.max_term_residual, (hv - emin * psi.amps()).norm());
  }
  c.energy = h.expectation(psi.amps());
  return c;
}

}  // namespace qlab::vbs
