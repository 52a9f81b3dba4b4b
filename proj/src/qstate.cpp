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

#include "qlab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

void check_sites(const std::vector<int>& dims, const std::vector<int>& sites) {
  std::set<int> seen;
  for (int s : sites) {
    if (s < 0 || s >= static_cast<int>(dims.size())) {
      throw std::out_of_range("site index " + std::to_string(s) +
                              " out of range");
    }
    if (!seen.insert(s).second) {
      throw std::invalid_argument("repeated site index " + std::to_string(s));
    }
  }
}

// Offsets of the local basis states of the listed sites, Kronecker order.
std::vector<std::size_t> local_offsets(const std::vector<int>& dims,
                                       const std::vector<std::size_t>& strides,
                                       const std::vector<int>& sites) {
  std::size_t d = 1;
  for (int s : sites) d *= static_cast<std::size_t>(dims[s]);
  std::vector<std::size_t> off(d, 0);
  for (std::size_t l = 0; l < d; ++l) {
    std::size_t rem = l;
    std::size_t o = 0;
    for (int k = static_cast<int>(sites.size()) - 1; k >= 0; --k) {
      const auto dk = static_cast<std::size_t>(dims[sites[k]]);
      o += (rem % dk) * strides[sites[k]];
      rem /= dk;
    }
    off[l] = o;
  }
  return off;
}

// Offsets of all configurations of the sites not listed.
std::vector<std::size_t> base_offsets(const std::vector<int>& dims,
                                      const std::vector<std::size_t>& strides,
                                      const std::vector<int>& sites) {
  std::vector<std::size_t> bases{0};
  for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
    if (std::find(sites.begin(), sites.end(), s) != sites.end()) continue;
    std::vector<std::size_t> next;
    next.reserve(bases.size() * dims[s]);
    for (int a = 0; a < dims[s]; ++a) {
      for (std::size_t b : bases) next.push_back(b + a * strides[s]);
    }
    bases.swap(next);
  }
  return bases;
}

}  // namespace

std::size_t total_dimension(const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("site dimension must be >= 1");
    n *= static_cast<std::size_t>(d);
    if (n > kMaxAmplitudes) {
      throw std::length_error("state exceeds the desk-scale cap of " +
                              std::to_string(kMaxAmplitudes) + " amplitudes");
    }
  }
  return n;
}

std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::size_t> st(dims.size());
  std::size_t acc = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    st[i] = acc;
    acc *= static_cast<std::size_t>(dims[i]);
  }
  return st;
}

QuditState::QuditState(std::vector<int> dims)
    : dims_(std::move(dims)), strides_(strides_of(dims_)) {
  amps_ = CVec::Zero(static_cast<Eigen::Index>(total_dimension(dims_)));
  amps_(0) = 1.0;
}

QuditState::QuditState(std::vector<int> dims, CVec amps)
    : dims_(std::move(dims)), strides_(strides_of(dims_)), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != total_dimension(dims_)) {
    throw std::invalid_argument("amplitude count does not match dimensions");
  }
  const double n = amps_.norm();
  if (!(n > kConstructTol)) throw std::domain_error("zero-norm state");
  amps_ /= n;
}

QuditState QuditState::basis(std::vector<int> dims,
                             const std::vector<int>& digits) {
  QuditState s(std::move(dims));
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(s.index_of(digits))) = 1.0;
  return s;
}

QuditState QuditState::product(const std::vector<CVec>& factors) {
  std::vector<int> dims;
  for (const auto& f : factors) dims.push_back(static_cast<int>(f.size()));
  CVec amps = CVec::Ones(1);
  total_dimension(dims);
  for (const auto& f : factors) {
    // Later sites are more significant: new = f (x) old.
    CVec next(amps.size() * f.size());
    for (Eigen::Index a = 0; a < f.size(); ++a) {
      next.segment(a * amps.size(), amps.size()) = f(a) * amps;
    }
    amps.swap(next);
  }
  return QuditState(std::move(dims), std::move(amps));
}

std::size_t QuditState::index_of(const std::vector<int>& digits) const {
  if (digits.size() != dims_.size()) {
    throw std::invalid_argument("digit count does not match site count");
  }
  std::size_t idx = 0;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (digits[s] < 0 || digits[s] >= dims_[s]) {
      throw std::out_of_range("digit out of range");
    }
    idx += static_cast<std::size_t>(digits[s]) * strides_[s];
  }
  return idx;
}

std::vector<int> QuditState::digits_of(std::size_t index) const {
  std::vector<int> d(dims_.size());
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    d[s] = static_cast<int>(index % dims_[s]);
    index /= dims_[s];
  }
  return d;
}

cplx QuditState::amplitude(const std::vector<int>& digits) const {
  return amps_(static_cast<Eigen::Index>(index_of(digits)));
}

void apply_local_inplace(const std::vector<int>& dims, CVec& vec,
                         const std::vector<int>& sites, const CMat& op) {
  check_sites(dims, sites);
  std::size_t d = 1;
  for (int s : sites) d *= static_cast<std::size_t>(dims[s]);
  if (op.rows() != static_cast<Eigen::Index>(d) || op.cols() != op.rows()) {
    throw std::invalid_argument("operator dimension does not match sites");
  }
  const auto strides = strides_of(dims);
  const auto off = local_offsets(dims, strides, sites);
  const auto bases = base_offsets(dims, strides, sites);
  const auto nb = static_cast<Eigen::Index>(bases.size());
  const auto dd = static_cast<Eigen::Index>(d);
  CMat x(dd, nb);
  for (Eigen::Index b = 0; b < nb; ++b) {
    for (Eigen::Index l = 0; l < dd; ++l) x(l, b) = vec(bases[b] + off[l]);
  }
  CMat y = op * x;
  for (Eigen::Index b = 0; b < nb; ++b) {
    for (Eigen::Index l = 0; l < dd; ++l) vec(bases[b] + off[l]) = y(l, b);
  }
}

CVec apply_site_map(std::vector<int>& dims, const CVec& vec, int site,
                    const CMat& map) {
  if (site < 0 || site >= static_cast<int>(dims.size())) {
    throw std::out_of_range("site index out of range");
  }
  if (map.cols() != dims[site]) {
    throw std::invalid_argument("map columns do not match site dimension");
  }
  const auto strides = strides_of(dims);
  const auto inner = static_cast<Eigen::Index>(strides[site]);
  const Eigen::Index d = dims[site];
  const Eigen::Index dn = map.rows();
  const Eigen::Index outer = vec.size() / (inner * d);
  std::vector<int> nd = dims;
  nd[site] = static_cast<int>(dn);
  total_dimension(nd);
  CVec out(inner * dn * outer);
  const CMat mt = map.transpose();
  for (Eigen::Index o = 0; o < outer; ++o) {
    Eigen::Map<const CMat> in(vec.data() + o * inner * d, inner, d);
    Eigen::Map<CMat> dst(out.data() + o * inner * dn, inner, dn);
    dst.noalias() = in * mt;
  }
  dims = nd;
  return out;
}

QuditState apply_gate(const QuditState& state, const std::vector<int>& sites,
                      const CMat& gate) {
  CVec v = state.amps();
  apply_local_inplace(state.dims(), v, sites, gate);
  return QuditState(state.dims(), std::move(v));
}

QuditState apply_operator(const QuditState& state,
                          const std::vector<int>& sites, const CMat& op) {
  return apply_gate(state, sites, op);
}

QuditState apply_map(const QuditState& state, int site, const CMat& map) {
  std::vector<int> dims = state.dims();
  CVec v = apply_site_map(dims, state.amps(), site, map);
  return QuditState(std::move(dims), std::move(v));
}

QuditState drop_unit_sites(const QuditState& state) {
  std::vector<int> dims;
  for (int d : state.dims()) {
    if (d != 1) dims.push_back(d);
  }
  return QuditState(std::move(dims), state.amps());
}

QuditState tensor(const QuditState& a, const QuditState& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  total_dimension(dims);
  CVec v(a.amps().size() * b.amps().size());
  for (Eigen::Index j = 0; j < b.amps().size(); ++j) {
    v.segment(j * a.amps().size(), a.amps().size()) = b.amps()(j) * a.amps();
  }
  return QuditState(std::move(dims), std::move(v));
}

QuditState permute_sites(const QuditState& state, const std::vector<int>& order) {
  const int n = state.num_sites();
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("permutation size mismatch");
  }
  check_sites(state.dims(), order);
  std::vector<int> nd(n);
  for (int k = 0; k < n; ++k) nd[k] = state.dim(order[k]);
  const auto ns = strides_of(nd);
  // new_stride_of_old[s] = stride in the new layout of old site s.
  std::vector<std::size_t> nso(n);
  for (int k = 0; k < n; ++k) nso[order[k]] = ns[k];
  CVec out(state.amps().size());
  std::vector<int> dig(n, 0);
  std::size_t ni = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    out(static_cast<Eigen::Index>(ni)) = state.amps()(static_cast<Eigen::Index>(i));
    // Odometer increment over old digits.
    for (int s = 0; s < n; ++s) {
      if (++dig[s] < state.dim(s)) {
        ni += nso[s];
        break;
      }
      ni -= nso[s] * static_cast<std::size_t>(state.dim(s) - 1);
      dig[s] = 0;
    }
  }
  return QuditState(std::move(nd), std::move(out));
}

QuditState insert_site(const QuditState& state, int pos, const CVec& v) {
  if (pos < 0 || pos > state.num_sites()) {
    throw std::out_of_range("insert position out of range");
  }
  std::vector<int> dims = state.dims();
  dims.insert(dims.begin() + pos, static_cast<int>(v.size()));
  total_dimension(dims);
  Eigen::Index inner = 1;
  for (int s = 0; s < pos; ++s) inner *= state.dim(s);
  const Eigen::Index d = v.size();
  const Eigen::Index outer = state.amps().size() / inner;
  CVec out(state.amps().size() * d);
  for (Eigen::Index o = 0; o < outer; ++o) {
    for (Eigen::Index a = 0; a < d; ++a) {
      out.segment(inner * (a + d * o), inner) =
          v(a) * state.amps().segment(inner * o, inner);
    }
  }
  return QuditState(std::move(dims), std::move(out));
}

cplx inner(const QuditState& a, const QuditState& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("dimension mismatch");
  return a.amps().dot(b.amps());
}

double fidelity(const QuditState& a, const QuditState& b) {
  return std::abs(inner(a, b));
}

bool equal_up_to_global_phase(const QuditState& a, const QuditState& b,
                              double tol) {
  return fidelity(a, b) >= 1.0 - tol;
}

cplx expectation(const QuditState& state, const std::vector<int>& sites,
                 const CMat& op) {
  CVec v = state.amps();
  apply_local_inplace(state.dims(), v, sites, op);
  return state.amps().dot(v);
}

std::vector<double> outcome_probabilities(const QuditState& state, int site,
                                          const std::vector<CMat>& projectors) {
  if (projectors.empty()) throw std::invalid_argument("empty projector set");
  const int d = state.dim(site);
  CMat sum = CMat::Zero(d, d);
  for (const auto& p : projectors) {
    if (p.rows() != d || p.cols() != d) {
      throw std::invalid_argument("projector dimension mismatch");
    }
    sum += p.adjoint() * p;
  }
  if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > kCompareTol) {
    throw std::invalid_argument("measurement operators are not complete");
  }
  std::vector<double> probs;
  for (const auto& p : projectors) {
    CVec v = state.amps();
    apply_local_inplace(state.dims(), v, {site}, p);
    probs.push_back(v.squaredNorm());
  }
  return probs;
}

MeasureResult measure(const QuditState& state, int site,
                      const std::vector<CMat>& projectors,
                      const OutcomeSelector& selector) {
  MeasureResult r;
  r.probabilities = outcome_probabilities(state, site, projectors);
  const int k = static_cast<int>(projectors.size());
  if (selector.is_forced()) {
    r.outcome = selector.forced();
    if (r.outcome < 0 || r.outcome >= k) {
      throw std::out_of_range("forced outcome out of range");
    }
    if (!(r.probabilities[r.outcome] > 1e-12)) {
      throw std::domain_error("forced outcome has zero probability");
    }
  } else {
    const double u = selector.rng().uniform();
    double acc = 0.0;
    r.outcome = -1;
    for (int i = 0; i < k; ++i) {
      acc += r.probabilities[i];
      if (u < acc) {
        r.outcome = i;
        break;
      }
    }
    if (r.outcome < 0) {
      for (int i = k - 1; i >= 0; --i) {
        if (r.probabilities[i] > 1e-12) {
          r.outcome = i;
          break;
        }
      }
    }
  }
  r.probability = r.probabilities[r.outcome];
  r.post_state = apply_operator(state, {site}, projectors[r.outcome]);
  return r;
}

std::vector<CMat> basis_projectors(int d) {
  std::vector<CMat> ps;
  for (int k = 0; k < d; ++k) {
    CMat p = CMat::Zero(d, d);
    p(k, k) = 1.0;
    ps.push_back(p);
  }
  return ps;
}

DensityMatrix reduced_density(const QuditState& state,
                              const std::vector<int>& keep_sites) {
  if (keep_sites.empty()) throw std::invalid_argument("empty keep set");
  check_sites(state.dims(), keep_sites);
  const int n = state.num_sites();
  std::vector<std::size_t> kst(n, 0), rst(n, 0);
  std::vector<bool> kept(n, false);
  std::size_t dk = 1;
  for (int k = static_cast<int>(keep_sites.size()) - 1; k >= 0; --k) {
    kst[keep_sites[k]] = dk;
    kept[keep_sites[k]] = true;
    dk *= static_cast<std::size_t>(state.dim(keep_sites[k]));
  }
  std::size_t dr = 1;
  for (int s = 0; s < n; ++s) {
    if (kept[s]) continue;
    rst[s] = dr;
    dr *= static_cast<std::size_t>(state.dim(s));
  }
  CMat m = CMat::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dr));
  std::vector<int> dig(n, 0);
  std::size_t ki = 0, ri = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    m(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(ri)) =
        state.amps()(static_cast<Eigen::Index>(i));
    for (int s = 0; s < n; ++s) {
      const std::size_t st = kept[s] ? kst[s] : rst[s];
      if (++dig[s] < state.dim(s)) {
        (kept[s] ? ki : ri) += st;
        break;
      }
      (kept[s] ? ki : ri) -= st * static_cast<std::size_t>(state.dim(s) - 1);
      dig[s] = 0;
    }
  }
  DensityMatrix dm;
  for (int s : keep_sites) dm.dims.push_back(state.dim(s));
  dm.rho = m * m.adjoint();
  return dm;
}

void validate_density(const DensityMatrix& rho) {
  const CMat& r = rho.rho;
  if (r.rows() != r.cols()) throw std::invalid_argument("density not square");
  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > kConstructTol) {
    throw std::invalid_argument("density not Hermitian");
  }
  if (std::abs(r.trace() - cplx(1.0)) > kCompareTol) {
    throw std::invalid_argument("density trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  if (es.eigenvalues().minCoeff() < -kCompareTol) {
    throw std::invalid_argument("density has a negative eigenvalue");
  }
}

RangeResult range_projector(const DensityMatrix& rho, double rank_tol) {
  validate_density(rho);
  Eigen::SelfAdjointEigenSolver<CMat> es(rho.rho);
  RangeResult r;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > rank_tol) cols.push_back(i);
  }
  r.rank = static_cast<int>(cols.size());
  r.basis = CMat(rho.rho.rows(), r.rank);
  for (int k = 0; k < r.rank; ++k) r.basis.col(k) = es.eigenvectors().col(cols[k]);
  r.projector = r.basis * r.basis.adjoint();
  return r;
}

}  // namespace qlab
