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

#include "qlab/hamiltonian.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qlab {

CMat HamiltonianTerm::dense() const {
  if (is_complement()) {
    return coeff * (CMat::Identity(range.rows(), range.rows()) -
                    range * range.adjoint());
  }
  return coeff * matrix;
}

LocalHamiltonian::LocalHamiltonian(std::vector<int> dims)
    : dims_(std::move(dims)), dim_(total_dimension(dims_)) {}

namespace {

std::size_t support_dim(const std::vector<int>& dims,
                        const std::vector<int>& sites) {
  std::set<int> seen;
  std::size_t d = 1;
  for (int s : sites) {
    if (s < 0 || s >= static_cast<int>(dims.size())) {
      throw std::out_of_range("term references an unknown site");
    }
    if (!seen.insert(s).second) throw std::invalid_argument("repeated site in term");
    d *= static_cast<std::size_t>(dims[s]);
  }
  return d;
}

}  // namespace

void LocalHamiltonian::add_term(std::vector<int> sites, CMat matrix,
                                std::string tag, double coeff) {
  const std::size_t d = support_dim(dims_, sites);
  if (matrix.rows() != static_cast<Eigen::Index>(d) || matrix.cols() != matrix.rows()) {
    throw std::invalid_argument("term size does not match its support");
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kConstructTol) {
    throw std::invalid_argument("term is not Hermitian");
  }
  HamiltonianTerm t;
  t.sites = std::move(sites);
  t.matrix = std::move(matrix);
  t.coeff = coeff;
  t.tag = std::move(tag);
  layouts_.push_back(make_layout(t.sites));
  terms_.push_back(std::move(t));
}

void LocalHamiltonian::add_complement_projector(std::vector<int> sites,
                                                CMat basis, std::string tag,
                                                double coeff) {
  const std::size_t d = support_dim(dims_, sites);
  if (basis.rows() != static_cast<Eigen::Index>(d)) {
    throw std::invalid_argument("basis size does not match its support");
  }
  HamiltonianTerm t;
  t.sites = std::move(sites);
  t.range = std::move(basis);
  t.coeff = coeff;
  t.tag = std::move(tag);
  layouts_.push_back(make_layout(t.sites));
  terms_.push_back(std::move(t));
}

void LocalHamiltonian::add(const LocalHamiltonian& other, double scale) {
  if (other.dims_ != dims_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t k = 0; k < other.terms_.size(); ++k) {
    HamiltonianTerm t = other.terms_[k];
    t.coeff *= scale;
    terms_.push_back(std::move(t));
    layouts_.push_back(other.layouts_[k]);
  }
}

LocalHamiltonian::Layout LocalHamiltonian::make_layout(
    const std::vector<int>& sites) const {
  const auto strides = strides_of(dims_);
  std::size_t d = 1;
  for (int s : sites) d *= static_cast<std::size_t>(dims_[s]);
  Layout lay;
  lay.local.resize(d);
  for (std::size_t l = 0; l < d; ++l) {
    std::size_t rem = l, o = 0;
    for (int j = static_cast<int>(sites.size()) - 1; j >= 0; --j) {
      const auto dj = static_cast<std::size_t>(dims_[sites[j]]);
      o += (rem % dj) * strides[sites[j]];
      rem /= dj;
    }
    lay.local[l] = o;
  }
  lay.bases = {0};
  for (int s = 0; s < static_cast<int>(dims_.size()); ++s) {
    if (std::find(sites.begin(), sites.end(), s) != sites.end()) continue;
    std::vector<std::size_t> next;
    next.reserve(lay.bases.size() * dims_[s]);
    for (int a = 0; a < dims_[s]; ++a) {
      for (std::size_t b : lay.bases) next.push_back(b + a * strides[s]);
    }
    lay.bases.swap(next);
  }
  return lay;
}

void LocalHamiltonian::apply_term_add(std::size_t k, const CVec& in,
                                      CVec& out) const {
  const HamiltonianTerm& t = terms_[k];
  const Layout& lay = layouts_[k];
  const auto d = static_cast<Eigen::Index>(lay.local.size());
  const auto nb = static_cast<Eigen::Index>(lay.bases.size());
  // Blocks of base offsets keep the gathered columns in cache.
  constexpr Eigen::Index kBlock = 1024;
  CMat x, y, c;
  for (Eigen::Index b0 = 0; b0 < nb; b0 += kBlock) {
    const Eigen::Index w = std::min(kBlock, nb - b0);
    x.resize(d, w);
    for (Eigen::Index b = 0; b < w; ++b) {
      const std::size_t base = lay.bases[b0 + b];
      for (Eigen::Index l = 0; l < d; ++l) x(l, b) = in(base + lay.local[l]);
    }
    if (t.is_complement()) {
      c.noalias() = t.range.adjoint() * x;
      y = x;
      y.noalias() -= t.range * c;
    } else {
      y.noalias() = t.matrix * x;
    }
    for (Eigen::Index b = 0; b < w; ++b) {
      const std::size_t base = lay.bases[b0 + b];
      for (Eigen::Index l = 0; l < d; ++l) out(base + lay.local[l]) += t.coeff * y(l, b);
    }
  }
}

void LocalHamiltonian::apply(const CVec& in, CVec& out) const {
  if (static_cast<std::size_t>(in.size()) != dim_) {
    throw std::invalid_argument("vector size mismatch");
  }
  out = CVec::Zero(in.size());
  for (std::size_t k = 0; k < terms_.size(); ++k) apply_term_add(k, in, out);
}

CVec LocalHamiltonian::apply_term(std::size_t k, const CVec& in) const {
  CVec out = CVec::Zero(in.size());
  apply_term_add(k, in, out);
  return out;
}

double LocalHamiltonian::expectation(const CVec& v) const {
  CVec w;
  apply(v, w);
  return v.dot(w).real() / v.squaredNorm();
}

CMat LocalHamiltonian::dense(std::size_t max_dim) const {
  if (dim_ > max_dim) throw std::length_error("Hamiltonian too large for dense form");
  const auto n = static_cast<Eigen::Index>(dim_);
  CMat m = CMat::Zero(n, n);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const CMat h = terms_[k].dense();
    const Layout& lay = layouts_[k];
    const auto d = static_cast<Eigen::Index>(lay.local.size());
    for (std::size_t base : lay.bases) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const auto c = static_cast<Eigen::Index>(base + lay.local[j]);
        for (Eigen::Index i = 0; i < d; ++i) {
          m(static_cast<Eigen::Index>(base + lay.local[i]), c) += h(i, j);
        }
      }
    }
  }
  return (m + m.adjoint()) / 2.0;
}

MatVec LocalHamiltonian::matvec() const {
  return [this](const CVec& in, CVec& out) { apply(in, out); };
}

Spectrum dense_spectrum(const LocalHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h.dense());
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

GroundInfo ground_info(const LocalHamiltonian& h, double degeneracy_tol) {
  const Spectrum sp = dense_spectrum(h);
  GroundInfo g;
  g.ground_energy = sp.values(0);
  Eigen::Index k = 0;
  while (k < sp.values.size() && sp.values(k) - g.ground_energy <= degeneracy_tol) ++k;
  g.degeneracy = static_cast<int>(k);
  g.gap = k < sp.values.size() ? sp.values(k) - g.ground_energy : 0.0;
  g.ground_space = sp.vectors.leftCols(k);
  return g;
}

}  // namespace qlab
