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

#include "qlab/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qlab/gates.hpp"

namespace qlab::mps {

namespace {

bool is_invertible(const CMat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 1e-12 * std::max(1.0, s(0));
}

}  // namespace

void MatrixProductState::validate() const {
  if (sites.empty()) throw std::invalid_argument("MPS needs at least one site");
  if (left.rows() != kBond || left.cols() < 1 || left.cols() > 2) {
    throw std::invalid_argument("left boundary must be D x 1 or D x 2");
  }
  if (right.cols() != kBond || right.rows() < 1 || right.rows() > 2) {
    throw std::invalid_argument("right boundary must be 1 x D or 2 x D");
  }
  for (const auto& site : sites) {
    if (site.empty()) throw std::invalid_argument("site without matrices");
    for (const auto& a : site) {
      if (a.rows() != kBond || a.cols() != kBond) {
        throw std::invalid_argument("site matrices must be D x D");
      }
    }
  }
}

QuditState mps_to_state(const MatrixProductState& m) {
  m.validate();
  std::vector<int> dims;
  if (m.left.cols() == 2) dims.push_back(2);
  for (const auto& site : m.sites) dims.push_back(static_cast<int>(site.size()));
  if (m.right.rows() == 2) dims.push_back(2);
  total_dimension(dims);  // enforces the cap

  // Row r of t is (A_j ... A_1 left).col(r) transposed.
  CMat t = m.left.transpose();
  for (const auto& site : m.sites) {
    const Eigen::Index rows = t.rows();
    CMat next(rows * static_cast<Eigen::Index>(site.size()), kBond);
    for (std::size_t k = 0; k < site.size(); ++k) {
      next.middleRows(static_cast<Eigen::Index>(k) * rows, rows) = t * site[k].transpose();
    }
    t = std::move(next);
  }
  const CMat f = t * m.right.transpose();
  CVec v = Eigen::Map<const CVec>(f.data(), f.size());
  if (v.norm() < 1e-12) throw std::runtime_error("MPS contraction vanishes");
  return QuditState(dims, v);
}

MatrixProductState uniform_mps(int n, const std::vector<CMat>& matrices, CMat left,
                               CMat right) {
  if (n < 1) throw std::invalid_argument("chain length must be positive");
  MatrixProductState m;
  m.sites.assign(n, matrices);
  m.left = std::move(left);
  m.right = std::move(right);
  m.validate();
  return m;
}

MatrixProductState with_free_boundaries(int n, const std::vector<CMat>& matrices) {
  return uniform_mps(n, matrices, gates::I2(), gates::I2());
}

MatrixProductState cluster_mps(int n) {
  CMat right(1, 2);
  right << 1, 0;
  return uniform_mps(n, {gates::H(), gates::H() * gates::Z()}, gates::ket_plus(), right);
}

CMat cluster_mps_relabel() { return gates::H(); }

std::vector<CMat> aklt_matrices() { return {gates::X(), gates::Y(), gates::Z()}; }

std::vector<CMat> modified_aklt_matrices() { return {gates::H(), gates::X(), gates::Y()}; }

std::vector<CMat> fnw_matrices(double theta) {
  const double half_pi = std::acos(-1.0) / 2;
  if (!(theta > 0 && theta < half_pi)) {
    throw std::invalid_argument("theta must lie in the open interval (0, pi/2)");
  }
  CMat a1 = CMat::Zero(2, 2), a2 = CMat::Zero(2, 2);
  a1(0, 1) = std::cos(theta);
  a2(1, 0) = std::cos(theta);
  return {std::sin(theta) * gates::Z(), a1, a2};
}

Tabular Tabular::from_mps(const MatrixProductState& m, const std::vector<std::string>& labels) {
  m.validate();
  Tabular t;
  t.num_sites_ = m.num_sites();
  t.left_ = m.left;
  t.right_ = m.right;
  for (int j = 0; j < m.num_sites(); ++j) {
    const int d = static_cast<int>(m.sites[j].size());
    if (static_cast<int>(labels.size()) != d) {
      throw std::invalid_argument("one label per physical index required");
    }
    t.dims_.push_back(d);
    Column c;
    c.site = j;
    for (int k = 0; k < d; ++k) c.entries.push_back({labels[k], CVec::Unit(d, k), m.sites[j][k]});
    t.columns_.push_back(std::move(c));
  }
  return t;
}

int Tabular::column_of_site(int site) const {
  for (int k = 0; k < num_columns(); ++k) {
    if (columns_[k].site == site) return k;
  }
  return -1;
}

std::vector<CMat> Tabular::site_matrices(int k) const {
  const Column& c = columns_.at(k);
  const int d = dims_.at(c.site);
  std::vector<CMat> out(d, CMat::Zero(kBond, kBond));
  for (const auto& e : c.entries) {
    for (int m = 0; m < d; ++m) out[m] += e.phys(m) * e.mat;
  }
  return out;
}

void Tabular::gauge_insert(int k, const CMat& m) {
  if (k < -1 || k >= num_columns()) throw std::out_of_range("gauge position out of range");
  if (!is_invertible(m)) throw std::invalid_argument("gauge matrix is singular");
  const CMat inv = m.inverse();
  if (k + 1 < num_columns()) {
    for (auto& e : columns_[k + 1].entries) e.mat = e.mat * m;
  } else {
    right_ = right_ * m;
  }
  if (k >= 0) {
    for (auto& e : columns_[k].entries) e.mat = inv * e.mat;
  } else {
    left_ = inv * left_;
  }
  log_.push_back({"gauge", k, k >= 0 ? columns_[k].site : -1, m, {}});
}

void Tabular::basis_mix(int k, const CMat& u) {
  Column& c = columns_.at(k);
  const int d = dims_.at(c.site);
  if (u.rows() != d || u.cols() != d || !gates::is_unitary(u, 1e-10)) {
    throw std::invalid_argument("basis change must be a unitary on the site");
  }
  for (auto& e : c.entries) e.phys = u * e.phys;
  log_.push_back({"basis", k, c.site, u, {}});
}

void Tabular::measure_delete(int k, const std::vector<std::string>& kept) {
  Column& c = columns_.at(k);
  std::vector<Entry> out;
  for (const auto& e : c.entries) {
    if (std::find(kept.begin(), kept.end(), e.label) != kept.end()) out.push_back(e);
  }
  if (out.empty()) throw std::invalid_argument("measurement keeps no entry");
  c.entries = std::move(out);
  log_.push_back({"measure", k, c.site, CMat(), kept});
}

void Tabular::absorb_single(int k) {
  const Column& c = columns_.at(k);
  if (c.entries.size() != 1) throw std::invalid_argument("only single-entry columns can be absorbed");
  const Entry e = c.entries[0];
  const int site = c.site;
  if (k > 0) {
    for (auto& f : columns_[k - 1].entries) f.mat = e.mat * f.mat;
  } else {
    left_ = e.mat * left_;
  }
  fixed_[site] = e.phys;
  columns_.erase(columns_.begin() + k);
  log_.push_back({"absorb", k, site, e.mat, {e.label}});
}

MatrixProductState Tabular::to_mps() const {
  MatrixProductState m;
  m.left = left_;
  m.right = right_;
  for (int s = 0; s < num_sites_; ++s) {
    const int k = column_of_site(s);
    if (k >= 0) {
      m.sites.push_back(site_matrices(k));
    } else {
      const CVec& w = fixed_.at(s);
      std::vector<CMat> mats;
      for (int i = 0; i < w.size(); ++i) mats.push_back(w(i) * CMat::Identity(kBond, kBond));
      m.sites.push_back(mats);
    }
  }
  return m;
}

QuditState Tabular::to_state() const { return mps_to_state(to_mps()); }

}  // namespace qlab::mps
