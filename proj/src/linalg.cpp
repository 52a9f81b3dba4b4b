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

#include "qlab/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "qlab/random.hpp"

namespace qlab {

namespace {

void project_out(CVec& v, const std::vector<CVec>& deflate) {
  for (const auto& d : deflate) v -= d * d.dot(v);
}

}  // namespace

LanczosResult lanczos_lowest(const MatVec& op, Eigen::Index dim,
                             const std::vector<CVec>& deflate,
                             const LanczosOptions& opts) {
  if (static_cast<std::size_t>(dim) <= deflate.size()) {
    throw std::invalid_argument("deflation leaves no space");
  }
  Rng rng(opts.seed);
  CVec v = random_complex_matrix(dim, 1, rng).col(0);
  project_out(v, deflate);
  project_out(v, deflate);
  v /= v.norm();
  CVec v_prev = CVec::Zero(dim);
  CVec w(dim);
  std::vector<double> alpha, beta;
  LanczosResult res;
  double beta_prev = 0.0;
  for (int k = 0; k < opts.max_iter; ++k) {
    op(v, w);
    project_out(w, deflate);
    const double a = v.dot(w).real();
    w -= a * v + beta_prev * v_prev;
    const double b = w.norm();
    alpha.push_back(a);
    beta.push_back(b);
    res.iterations = k + 1;
    const auto m = static_cast<Eigen::Index>(alpha.size());
    const bool check = (k % 4 == 3) || b < 1e-12 || k + 1 == opts.max_iter;
    if (check) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      res.value = es.eigenvalues()(0);
      res.residual = std::abs(b * es.eigenvectors()(m - 1, 0));
      if (res.residual <= opts.tol || b < 1e-12) {
        res.converged = true;
        return res;
      }
    }
    v_prev.swap(v);
    v = w / b;
    beta_prev = b;
  }
  return res;
}

CMat orthonormal_basis(const CMat& m, double tol) {
  if (m.cols() == 0) return CMat(m.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol * std::max(smax, 1e-300)) ++r;
  if (smax == 0.0) r = 0;
  return svd.matrixU().leftCols(r);
}

RVec hermitian_eigenvalues(const CMat& h) {
  if (h.size() > 0 && h.imag().cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + h.cwiseAbs().maxCoeff())) {
    const Eigen::MatrixXd re = h.real();
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(re, Eigen::EigenvaluesOnly).eigenvalues();
  }
  return Eigen::SelfAdjointEigenSolver<CMat>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

CMat low_eigenspace(const CMat& h, double threshold) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  Eigen::Index r = 0;
  while (r < es.eigenvalues().size() && es.eigenvalues()(r) <= threshold) ++r;
  return es.eigenvectors().leftCols(r);
}

double subspace_distance(const CMat& a, const CMat& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const double d1 = containment_residual(b, a);
  const double d2 = containment_residual(a, b);
  return std::max(d1, d2);
}

double containment_residual(const CMat& outer, const CMat& inner) {
  if (inner.cols() == 0) return 0.0;
  const CMat r = inner - outer * (outer.adjoint() * inner);
  Eigen::JacobiSVD<CMat> svd(r);
  return svd.singularValues()(0);
}

CMat subspace_intersection(const std::vector<CMat>& bases, Eigen::Index dim,
                           double tol) {
  CMat sum = CMat::Zero(dim, dim);
  for (const auto& b : bases) {
    sum += CMat::Identity(dim, dim) - b * b.adjoint();
  }
  return low_eigenspace(sum, tol);
}

}  // namespace qlab
