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

// Bond-dimension-2 matrix product states and their tabular form.
//
// Amplitudes are right.row(bR) * A_n[i_n] ... A_1[i_1] * left.col(bL). A
// boundary with two columns (rows) is a free virtual qubit and shows up as
// an extra physical qubit: site 0 for the left end, the last site for the
// right end.

#ifndef QLAB_MPS_HPP_
#define QLAB_MPS_HPP_

#include <map>
#include <string>
#include <vector>

#include "qlab/qstate.hpp"

namespace qlab::mps {

constexpr int kBond = 2;

struct MatrixProductState {
  // sites[j][m] is the D x D matrix of physical index m on site j.
  std::vector<std::vector<CMat>> sites;
  CMat left;   // D x bl
  CMat right;  // br x D

  int num_sites() const { return static_cast<int>(sites.size()); }

  /// Throws std::invalid_argument on shape errors.
  void validate() const;
};

/// Contracts to a normalized state. Throws std::runtime_error if the
/// contraction vanishes and std::length_error above the amplitude cap.
QuditState mps_to_state(const MatrixProductState& m);

/// Same site matrices on every site.
MatrixProductState uniform_mps(int n, const std::vector<CMat>& matrices, CMat left,
                               CMat right);

/// Free boundaries: left = right = I, exposing both end qubits.
MatrixProductState with_free_boundaries(int n, const std::vector<CMat>& matrices);

/// A[0] = H, A[1] = HZ with left |+> and right <0|. The contraction is
/// the chain cluster state with H applied to every site; see
/// cluster_mps_relabel.
MatrixProductState cluster_mps(int n);
/// The per-site physical unitary that maps the cluster MPS state onto the
/// chain cluster state.
CMat cluster_mps_relabel();

/// A = (X, Y, Z).
std::vector<CMat> aklt_matrices();
/// A = (H, X, Y).
std::vector<CMat> modified_aklt_matrices();
/// A = (sin t Z, cos t |0><1|, cos t |1><0|); t must lie in (0, pi/2).
std::vector<CMat> fnw_matrices(double theta);

// ---------------------------------------------------------------------------
// Tabular form

struct Entry {
  std::string label;
  CVec phys;  // physical vector this entry contributes
  CMat mat;
};

struct Column {
  int site = 0;  // physical site of the underlying chain (excluding boundaries)
  std::vector<Entry> entries;
};

/// One recorded transformation.
struct TabularOp {
  std::string kind;  // "gauge", "basis", "measure", "absorb"
  int column = 0;
  int site = -1;
  CMat matrix;  // gauge matrix or basis unitary
  std::vector<std::string> labels;
};

/// An MPS written as columns of (label, physical vector, matrix) entries.
/// The state is sum over choices of one entry per column of
/// (tensor of physical vectors) * right * (product of matrices) * left.
/// Columns removed by absorption leave a fixed physical vector on their
/// site, so the contracted state keeps every site.
class Tabular {
 public:
  /// Entry m of site j has label labels[m] and physical vector e_m.
  static Tabular from_mps(const MatrixProductState& m, const std::vector<std::string>& labels);

  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_sites() const { return num_sites_; }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(int k) const { return columns_.at(k); }
  const std::map<int, CVec>& fixed() const { return fixed_; }
  const CMat& left() const { return left_; }
  const CMat& right() const { return right_; }
  const std::vector<TabularOp>& log() const { return log_; }

  /// Column index holding a physical site, or -1.
  int column_of_site(int site) const;

  /// sum_e phys_e[m] mat_e for each physical index m of column k.
  std::vector<CMat> site_matrices(int k) const;

  /// Inserts M M^-1 between column k and column k + 1: column k + 1 gets
  /// A -> A M and column k gets A -> M^-1 A. k = -1 places the pair
  /// between the left boundary and column 0 (left -> M^-1 left); k = last
  /// places it between the last column and the right boundary
  /// (right -> right M). Throws std::invalid_argument if M is singular.
  void gauge_insert(int k, const CMat& m);

  /// Applies the physical unitary U to column k's site: phys -> U phys.
  /// The state changes by U on that site; the unitary is recorded.
  void basis_mix(int k, const CMat& u);

  /// Keeps only the entries with the given labels. Equals the projective
  /// measurement branch onto their physical vectors when those vectors are
  /// orthonormal.
  void measure_delete(int k, const std::vector<std::string>& kept);

  /// Removes a single-entry column by multiplying its matrix into the
  /// previous column (or the left boundary). Its physical vector becomes a
  /// fixed site vector. Throws std::invalid_argument for multi-entry
  /// columns.
  void absorb_single(int k);

  /// The MPS of the current table (fixed sites contribute w[m] I).
  MatrixProductState to_mps() const;
  QuditState to_state() const;

 private:
  int num_sites_ = 0;
  std::vector<int> dims_;
  std::vector<Column> columns_;
  std::map<int, CVec> fixed_;
  CMat left_;
  CMat right_;
  std::vector<TabularOp> log_;
};

}  // namespace qlab::mps

#endif  // QLAB_MPS_HPP_
