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

#include <cmath>

#include <gtest/gtest.h>

#include "qlab/cluster.hpp"
#include "qlab/gates.hpp"
#include "qlab/graph.hpp"
#include "qlab/spin.hpp"

using namespace qlab;
using namespace qlab::vbs;
using mps::Tabular;

namespace {

const std::vector<std::string> kXYZ{"X", "Y", "Z"};

QuditState apply_each(const QuditState& s, const std::vector<CMat>& maps) {
  QuditState out = s;
  for (std::size_t k = 0; k < maps.size(); ++k) out = apply_map(out, static_cast<int>(k), maps[k]);
  return drop_unit_sites(out);
}

QuditState cluster_chain(int n) { return build_cluster_state(graph::chain(n)); }

}  // namespace

TEST(Mps, ClusterMatricesGiveClusterChain) {
  for (int n = 1; n <= 8; ++n) {
    QuditState s = mps::mps_to_state(mps::cluster_mps(n));
    for (int j = 0; j < n; ++j) s = apply_gate(s, {j}, mps::cluster_mps_relabel());
    EXPECT_TRUE(equal_up_to_global_phase(s, cluster_chain(n), 1e-10)) << n;
  }
}

TEST(Mps, ClusterMatricesWithoutRelabelDifferFromThreeSites) {
  const QuditState s = mps::mps_to_state(mps::cluster_mps(3));
  EXPECT_LT(fidelity(s, cluster_chain(3)), 1 - 1e-3);
}

TEST(Mps, FnwMatchesDirectContraction) {
  const double theta = std::acos(-1.0) / 4;
  const auto a = mps::fnw_matrices(theta);
  const int n = 4;
  CMat right(1, 2), left(2, 1);
  right << 0.3, cplx(0.2, 0.7);
  left << 1.0, cplx(0, -0.5);
  const QuditState s = mps::mps_to_state(mps::uniform_mps(n, a, left, right));
  // Oracle: explicit product per configuration.
  CVec v(81);
  for (int idx = 0; idx < 81; ++idx) {
    CMat m = CMat::Identity(2, 2);
    int rest = idx;
    for (int j = 0; j < n; ++j) {
      m = a[rest % 3] * m;
      rest /= 3;
    }
    v(idx) = (right * m * left)(0, 0);
  }
  EXPECT_GT(fidelity(s, QuditState({3, 3, 3, 3}, v)), 1 - 1e-12);
  EXPECT_THROW(mps::fnw_matrices(0.0), std::invalid_argument);
  EXPECT_THROW(mps::fnw_matrices(std::acos(-1.0) / 2), std::invalid_argument);
}

TEST(Mps, ZeroContractionThrows) {
  CMat right(1, 2), left(2, 1);
  right << 1, 0;
  left << 0, 1;
  EXPECT_THROW(mps::mps_to_state(mps::uniform_mps(1, {gates::I2()}, left, right)),
               std::runtime_error);
}

TEST(Vbs, BondStatesAreLocalImagesOfTheSinglet) {
  auto vec = [](const CMat& b) {
    CVec v(4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) v(2 * i + j) = b(i, j);
    }
    return v;
  };
  const CVec singlet = vec(bond_matrix(BondKind::kSinglet));
  const CMat hz_x = gates::kron(gates::H() * gates::Z(), gates::X());
  EXPECT_NEAR((vec(bond_matrix(BondKind::kCBond)) - hz_x * singlet).norm(), 0.0, 1e-15);
  const CMat z_x = gates::kron(gates::Z(), gates::X());
  EXPECT_NEAR((vec(bond_matrix(BondKind::kBond)) - z_x * singlet).norm(), 0.0, 1e-15);
}

TEST(Vbs, ClusterProjectorGivesClusterChain) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_TRUE(equal_up_to_global_phase(build_vbs(n, cluster_projector_spec(), BoundaryMode::kPlus),
                                         cluster_chain(n)));
    // Exposed ends are two more cluster qubits.
    EXPECT_TRUE(equal_up_to_global_phase(build_vbs(n, cluster_projector_spec()),
                                         cluster_chain(n + 2)));
  }
}

TEST(Vbs, FlippedProjectorDiffersByPhaseFlips) {
  // A flipped right slot reads through the next bond as Z on the next site.
  for (int n = 1; n <= 5; ++n) {
    QuditState s = build_vbs(n, cluster_projector_flip_spec(), BoundaryMode::kPlus);
    for (int j = 1; j < n; ++j) s = apply_gate(s, {j}, gates::Z());
    EXPECT_TRUE(equal_up_to_global_phase(s, cluster_chain(n))) << n;
  }
}

TEST(Vbs, SpinThreeHalvesReducesOnEveryBranch) {
  // Outcome 0 keeps {0~, 1~}; outcome 1 keeps {2~, 3~}, which reads as the
  // cluster qubit with a Z on the next site.
  CMat low = CMat::Zero(4, 4), high = CMat::Zero(4, 4);
  low(0, 0) = low(1, 1) = 1;
  high(2, 2) = high(3, 3) = 1;
  CMat read_low = CMat::Zero(2, 4), read_high = CMat::Zero(2, 4);
  read_low(0, 0) = read_low(1, 1) = 1;
  read_high(0, 2) = read_high(1, 3) = 1;
  for (int n = 1; n <= 5; ++n) {
    const QuditState psi = build_vbs(n, spin32_projector_spec(), BoundaryMode::kPlus);
    for (int mask = 0; mask < (1 << n); ++mask) {
      QuditState s = psi;
      double p = 1.0;
      for (int j = 0; j < n; ++j) {
        auto r = measure(s, j, {low, high}, (mask >> j) & 1);
        p *= r.probability;
        s = r.post_state;
      }
      EXPECT_NEAR(p, std::pow(0.5, n), 1e-12);
      for (int j = 0; j < n; ++j) s = apply_map(s, j, ((mask >> j) & 1) ? read_high : read_low);
      for (int j = 0; j + 1 < n; ++j) {
        if ((mask >> j) & 1) s = apply_gate(s, {j + 1}, gates::Z());
      }
      EXPECT_TRUE(equal_up_to_global_phase(s, cluster_chain(n))) << n << " " << mask;
    }
  }
}

TEST(Vbs, ProjectorValidation) {
  BondProjectorSpec bad{BondKind::kSinglet, CMat::Ones(2, 4)};
  EXPECT_THROW(build_vbs(2, bad), std::invalid_argument);
  EXPECT_THROW(build_vbs(0, aklt_projector_spec()), std::invalid_argument);
  EXPECT_THROW(build_vbs(30, aklt_projector_spec()), std::length_error);
}

TEST(Vbs, AkltVbsMatchesXyzMpsAfterCartesianMap) {
  const CMat to_labels = aklt_label_basis().conjugate();
  for (int n = 1; n <= 5; ++n) {
    const QuditState vbs_state = build_vbs(n, aklt_projector_spec());
    std::vector<CMat> maps{aklt_left_boundary_map()};
    for (int j = 0; j < n; ++j) maps.push_back(to_labels);
    maps.push_back(aklt_right_boundary_map());
    const QuditState m = mps::mps_to_state(mps::with_free_boundaries(n, mps::aklt_matrices()));
    EXPECT_TRUE(equal_up_to_global_phase(apply_each(vbs_state, maps), m, 1e-10)) << n;
  }
  EXPECT_TRUE(gates::is_unitary(aklt_label_basis()));
}

TEST(Tabular, RoundTripAndIdentityGauge) {
  const auto m = mps::with_free_boundaries(3, mps::aklt_matrices());
  auto t = Tabular::from_mps(m, kXYZ);
  const QuditState ref = mps::mps_to_state(m);
  EXPECT_TRUE(equal_up_to_global_phase(t.to_state(), ref, 1e-14));
  auto u = t;
  u.gauge_insert(1, gates::I2());
  for (int k = 0; k < 3; ++k) {
    for (int e = 0; e < 3; ++e) {
      EXPECT_EQ(u.column(k).entries[e].mat, t.column(k).entries[e].mat);
    }
  }
}

TEST(Tabular, RandomGaugesPreserveState) {
  Rng rng(12);
  const auto m = mps::with_free_boundaries(4, mps::aklt_matrices());
  auto t = Tabular::from_mps(m, kXYZ);
  const QuditState ref = mps::mps_to_state(m);
  for (int k = -1; k < 4; ++k) t.gauge_insert(k, random_complex_matrix(2, 2, rng));
  const QuditState s = t.to_state();
  EXPECT_NEAR(std::abs(inner(s, ref)), 1.0, 1e-10);
  EXPECT_NEAR((s.amps() - ref.amps()).norm(), 0.0, 1e-10);
  CMat singular = CMat::Zero(2, 2);
  singular(0, 0) = 1;
  EXPECT_THROW(t.gauge_insert(0, singular), std::invalid_argument);
}

TEST(Tabular, YInsertionGivesZIXColumns) {
  const auto m = mps::with_free_boundaries(2, mps::aklt_matrices());
  auto t = Tabular::from_mps(m, kXYZ);
  const QuditState before = t.to_state();
  t.gauge_insert(0, gates::Y());
  const cplx i(0, 1);
  const auto c1 = t.site_matrices(1);  // X Y, Y Y, Z Y
  EXPECT_NEAR((c1[0] - i * gates::Z()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((c1[1] - gates::I2()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((c1[2] + i * gates::X()).norm(), 0.0, 1e-15);
  const auto c0 = t.site_matrices(0);  // Y X, Y Y, Y Z
  EXPECT_NEAR((c0[0] + i * gates::Z()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((c0[2] - i * gates::X()).norm(), 0.0, 1e-15);
  // Explicit basis unitaries bring both columns to (Z, I, X).
  CMat u1 = CMat::Zero(3, 3), u0 = CMat::Zero(3, 3);
  u1.diagonal() << -i, 1, i;
  u0.diagonal() << i, 1, -i;
  // phys -> U phys multiplies the matrix read on index m by U(m, m).
  t.basis_mix(1, u1);
  t.basis_mix(0, u0);
  for (int k = 0; k < 2; ++k) {
    const auto c = t.site_matrices(k);
    EXPECT_NEAR((c[0] - gates::Z()).norm(), 0.0, 1e-15);
    EXPECT_NEAR((c[1] - gates::I2()).norm(), 0.0, 1e-15);
    EXPECT_NEAR((c[2] - gates::X()).norm(), 0.0, 1e-15);
  }
  // The state changed by exactly the recorded unitaries.
  ASSERT_EQ(t.log().size(), 3u);
  QuditState expect = apply_gate(before, {2}, t.log()[1].matrix);
  expect = apply_gate(expect, {1}, t.log()[2].matrix);
  EXPECT_TRUE(equal_up_to_global_phase(t.to_state(), expect, 1e-12));
  // And the (Z, I, X) MPS is that state.
  const QuditState zix = mps::mps_to_state(
      mps::with_free_boundaries(2, {gates::Z(), gates::I2(), gates::X()}));
  EXPECT_TRUE(equal_up_to_global_phase(t.to_state(), zix, 1e-12));
  EXPECT_THROW(t.basis_mix(0, 2.0 * CMat::Identity(3, 3)), std::invalid_argument);
}

TEST(Tabular, MeasureDeleteMatchesProjectiveBranch) {
  const auto m = mps::with_free_boundaries(3, mps::aklt_matrices());
  auto t = Tabular::from_mps(m, kXYZ);
  const QuditState ref = mps::mps_to_state(m);
  t.measure_delete(1, {"X", "Y"});
  CMat keep = CMat::Zero(3, 3);
  keep(0, 0) = keep(1, 1) = 1;
  const auto r = measure(ref, 2, {keep, CMat::Identity(3, 3) - keep}, 0);
  EXPECT_TRUE(equal_up_to_global_phase(t.to_state(), r.post_state, 1e-12));
  // A single surviving entry can be absorbed without changing the state.
  t.measure_delete(2, {"Z"});
  const QuditState before = t.to_state();
  EXPECT_THROW(t.absorb_single(0), std::invalid_argument);
  t.absorb_single(2);
  EXPECT_EQ(t.num_columns(), 2);
  EXPECT_TRUE(equal_up_to_global_phase(t.to_state(), before, 1e-12));
  t.measure_delete(0, {"Y"});
  const QuditState before0 = t.to_state();
  t.absorb_single(0);
  EXPECT_TRUE(equal_up_to_global_phase(t.to_state(), before0, 1e-12));
}

TEST(AkltHamiltonian, TwoSiteSpectrum) {
  const auto h = aklt_hamiltonian(2, false);
  const auto sp = dense_spectrum(h);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(sp.values(k), -2.0 / 3, 1e-12);
  for (int k = 4; k < 9; ++k) EXPECT_NEAR(sp.values(k), 4.0 / 3, 1e-12);
  // The bulk term is 2 P(J=2) - 2/3.
  const SpinOps s = spin_ops_from_map(symmetric_isometry(2));
  const CMat p2 = total_spin_projector(s, s, 4);
  EXPECT_NEAR((h.dense() - (2.0 * p2 - 2.0 / 3 * CMat::Identity(9, 9))).norm(), 0.0, 1e-12);
}

TEST(AkltHamiltonian, FrustrationFree) {
  for (int n = 1; n <= 6; ++n) {
    const QuditState psi = build_vbs(n, aklt_projector_spec());
    const auto c = check_frustration_free(aklt_hamiltonian(n, true), psi);
    EXPECT_LT(c.max_term_residual, 1e-9);
    EXPECT_NEAR(c.energy, c.ground_energy, 1e-9);
    EXPECT_NEAR(c.ground_energy, -(n - 1) * 2.0 / 3 - 2.0, 1e-12);
  }
}

TEST(AkltHamiltonian, UniqueGroundStateWithBoundary) {
  for (int n = 1; n <= 4; ++n) {
    const auto gi = ground_info(aklt_hamiltonian(n, true));
    EXPECT_EQ(gi.degeneracy, 1) << n;
    EXPECT_GT(gi.gap, 1e-6);
    const QuditState psi = build_vbs(n, aklt_projector_spec());
    EXPECT_NEAR(std::abs(psi.amps().dot(gi.ground_space.col(0))), 1.0, 1e-9);
  }
}

TEST(AkltHamiltonian, OpenChainIsFourfoldDegenerate) {
  const auto gi = ground_info(aklt_hamiltonian(4, false));
  EXPECT_EQ(gi.degeneracy, 4);
}

TEST(AkltReduction, EveryBranchGivesClusterChain) {
  for (int n = 1; n <= 5; ++n) {
    const auto s = enumerate_aklt_branches(n);
    EXPECT_EQ(s.branches, 1 << n);
    EXPECT_NEAR(s.total_probability, 1.0, 1e-12);
    EXPECT_GT(s.min_overlap, 1 - 1e-9);
    EXPECT_NEAR(s.min_success_probability, 2.0 / 3, 1e-9);
    EXPECT_NEAR(s.max_success_probability, 2.0 / 3, 1e-9);
    EXPECT_NEAR(s.sites_per_qubit, 1.5, 1e-9);
  }
}

TEST(AkltReduction, AllSuccessOnFourSites) {
  const auto r = reduce_aklt_to_cluster(4, SuccessSource(std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(r.cluster_length, 4);
  const QuditState c = r.frame.apply(r.post_state);
  EXPECT_TRUE(equal_up_to_global_phase(c, cluster_chain(4), 1e-9));
}

TEST(AkltReduction, TranscriptColumnStructure) {
  // Success, failure, success, failure, success, success.
  const auto r = reduce_aklt_to_cluster(6, SuccessSource(std::vector<int>{1, 0, 1, 0, 1, 1}));
  const std::vector<ReductionMeasurement> used{
      ReductionMeasurement::kM1, ReductionMeasurement::kM2, ReductionMeasurement::kM2,
      ReductionMeasurement::kM1, ReductionMeasurement::kM1, ReductionMeasurement::kM2};
  const std::vector<std::vector<std::string>> kept{{"Y", "Z"}, {"Z"}, {"Y", "X"},
                                                   {"X"},      {"Y", "Z"}, {"Y", "X"}};
  ASSERT_EQ(r.transcript.size(), 6u);
  for (int j = 0; j < 6; ++j) {
    EXPECT_EQ(r.transcript[j].measurement, used[j]);
    EXPECT_EQ(r.transcript[j].kept, kept[j]);
  }
  EXPECT_EQ(r.cluster_length, 4);
  EXPECT_EQ(r.frame.logical_sites, (std::vector<int>{1, 3, 5, 6}));
  EXPECT_GT(r.overlap, 1 - 1e-9);
}

TEST(AkltReduction, SampledRunsAreReproducible) {
  Rng a(99), b(99);
  const auto ra = reduce_aklt_to_cluster(5, SuccessSource(a));
  const auto rb = reduce_aklt_to_cluster(5, SuccessSource(b));
  EXPECT_EQ(to_json(ra).dump(), to_json(rb).dump());
  EXPECT_GT(ra.overlap, 1 - 1e-9);
}

TEST(ProtocolSearch, AkltProtocolIsAccepted) {
  const ProtocolCandidate p{gates::Y(), gates::H(), {1, 2}, {1, 0}};
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> s{mask & 1, (mask >> 1) & 1, mask >> 2};
    EXPECT_GT(run_protocol_branch(mps::aklt_matrices(), p, s), 1 - 1e-9);
  }
  const auto res = search_reduction_protocol(mps::aklt_matrices(), 3);
  EXPECT_TRUE(res.found);
}

TEST(ProtocolSearch, ModifiedAkltHasNoProtocolInTheSearchedFamily) {
  // Recorded negative result: no gauge pair and keep-set pair in the
  // searched family reduces every branch of the (H, X, Y) chain.
  const auto res = search_reduction_protocol(mps::modified_aklt_matrices(), 3);
  EXPECT_FALSE(res.found);
  EXPECT_EQ(res.candidates_tried, 24 * 24 * 9);
}
