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

#include "qlab/quasichain.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qlab/gates.hpp"
#include "qlab/linalg.hpp"
#include "qlab/spin.hpp"

using namespace qlab;
using namespace qlab::quasichain;
using aklt2d::Outcome;

namespace {

constexpr Outcome kX = Outcome::kX;
constexpr Outcome kY = Outcome::kY;
constexpr Outcome kZ = Outcome::kZ;

// Compressed digits with non-negligible amplitude.
std::vector<std::vector<int>> support(const QuditState& s) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.amps()(static_cast<Eigen::Index>(i))) > 1e-10) out.push_back(s.digits_of(i));
  }
  return out;
}

}  // namespace

TEST(QuasichainSpec, Layout) {
  const QuasichainSpec s{3};
  EXPECT_EQ(s.num_sites(), 8);
  EXPECT_EQ(s.pendant(0), 3);
  EXPECT_EQ(s.host(s.pendant(0)), 0);
  EXPECT_EQ(s.host(s.pendant(2)), 1);
  EXPECT_EQ(s.host(s.pendant(4)), 2);
  const auto g = quasichain_graph(s);
  for (int v = 0; v < s.n; ++v) EXPECT_EQ(g.degree(v), 3);
  for (int i = 0; i <= s.n + 1; ++i) EXPECT_EQ(g.degree(s.pendant(i)), 1);
  EXPECT_THROW(quasichain_graph(QuasichainSpec{5}), std::invalid_argument);
  EXPECT_THROW(s.pendant(5), std::invalid_argument);
}

TEST(QuasichainHamiltonian, SpinTwoProjectorRank) {
  const SpinOps a = spin_ops_from_map(aklt2d::site_projector(3));
  const SpinOps b = spin_ops(1);
  const CMat p = total_spin_projector(a, b, 4);
  EXPECT_NEAR(p.trace().real(), 5.0, 1e-12);
  EXPECT_EQ(static_cast<int>(orthonormal_basis(p).cols()), 5);
}

TEST(QuasichainHamiltonian, FrustrationFreeForAllLengths) {
  for (int n = 1; n <= kMaxBackbone; ++n) {
    const QuasichainSpec s{n};
    const QuditState psi = build_quasichain(s);
    const LocalHamiltonian h = quasichain_hamiltonian(s);
    EXPECT_EQ(static_cast<int>(h.terms().size()), (n - 1) + (n + 2));
    for (std::size_t k = 0; k < h.terms().size(); ++k) {
      EXPECT_LE(h.apply_term(k, psi.amps()).norm(), 1e-10) << n << " " << k;
    }
  }
}

TEST(QuasichainHamiltonian, UniqueGappedGroundState) {
  const LocalHamiltonian h1 = quasichain_hamiltonian(QuasichainSpec{1});
  const RVec ev = hermitian_eigenvalues(h1.dense());
  EXPECT_NEAR(ev(0), 0.0, 1e-12);
  EXPECT_GT(ev(1), 0.1);
  for (int n = 2; n <= 3; ++n) {
    const QuasichainSpec s{n};
    const LocalHamiltonian h = quasichain_hamiltonian(s);
    const auto r = lanczos_lowest(h.matvec(), static_cast<Eigen::Index>(h.dimension()),
                                  {build_quasichain(s).amps()}, LanczosOptions{1000, 1e-9, 3});
    EXPECT_GT(r.value, 0.05) << n;
  }
}

TEST(QuasichainMerge, RelabelingMap) {
  const CMat u = merge_map();
  EXPECT_LE((u.adjoint() * u - CMat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  for (int c = 0; c < 4; ++c) {
    int nonzero = 0;
    for (int r = 0; r < 4; ++r) nonzero += std::abs(u(r, c)) > 0.5;
    EXPECT_EQ(nonzero, 1);
  }
  // S_z on B equals S_z(b1) + 2 S_z(b2) carried through U.
  const SpinOps b = spin_ops_from_map(aklt2d::site_projector(3));
  const CMat sz = gates::Z() / 2.0;
  const CMat rhs = gates::kron(sz, gates::I2()) + 2.0 * gates::kron(gates::I2(), sz);
  EXPECT_LE((b.z * u - u * rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(QuasichainMerge, OperationsCommuteWithRelabeling) {
  const CoupledSystem sys = make_coupled(QuasichainSpec{2}, QuasichainSpec{2}, {1, 1});
  const QuditState psi = build_coupled(sys);
  const QuditState merged = merge_pendants(sys, psi);
  Rng rng(4);
  std::vector<CMat> ops{gates::kron(gates::X(), gates::X()), gates::CZ(), random_unitary(4, rng)};
  for (const CMat& op : ops) {
    const QuditState a = merge_pendants(sys, apply_on_pair(sys, psi, op));
    const QuditState b = apply_on_merged(sys, merged, op);
    EXPECT_LE((a.amps() - b.amps()).cwiseAbs().maxCoeff(), 1e-12);
  }
  // A measurement on b1 reads the same probabilities on B.
  const CMat proj = gates::kron(gates::ket_plus() * gates::ket_plus().adjoint(), gates::I2());
  const double p_pair = apply_on_pair(sys, psi, proj).amps().squaredNorm();
  (void)p_pair;
  CVec v = psi.amps();
  apply_local_inplace(psi.dims(), v, {sys.b1, sys.b2}, proj);
  CVec w = merged.amps();
  const CMat u = merge_map();
  apply_local_inplace(merged.dims(), w, {merged_index(sys)[sys.b1]}, u * proj * u.adjoint());
  EXPECT_NEAR(v.squaredNorm(), w.squaredNorm(), 1e-12);
}

TEST(QuasichainMerge, MergedHamiltonianIsFrustrationFreeAndGapped) {
  const CoupledSystem sys = make_coupled(QuasichainSpec{2}, QuasichainSpec{2}, {1, 2});
  const QuditState merged = merge_pendants(sys, build_coupled(sys));
  const LocalHamiltonian h = merged_hamiltonian(sys);
  EXPECT_EQ(merged.num_sites(), 11);
  for (std::size_t k = 0; k < h.terms().size(); ++k) {
    EXPECT_LE(h.apply_term(k, merged.amps()).norm(), 1e-9) << k;
  }
  const auto r = lanczos_lowest(h.matvec(), static_cast<Eigen::Index>(h.dimension()),
                                {merged.amps()}, LanczosOptions{1000, 1e-9, 5});
  EXPECT_GT(r.value, 1e-3);
  EXPECT_THROW(make_coupled(QuasichainSpec{2}, QuasichainSpec{2}, {4, 1}), std::invalid_argument);
}

TEST(QuasichainReduce, TwoDistinctOutcomesGiveTwoQubitCluster) {
  Rng rng(1);
  const auto r = reduce_quasichain_to_cluster(QuasichainSpec{2}, rng, std::vector<Outcome>{kZ, kX});
  EXPECT_EQ(r.domains.num_domains(), 2);
  EXPECT_TRUE(r.is_path);
  EXPECT_TRUE(r.report.ok);
  // a_z domain: A_1 with b_0 and b_1; X-bar covers all five qubits.
  EXPECT_EQ(r.domains.domains[0], (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(r.domains.logical[0].x.weight(), 5);
}

TEST(QuasichainReduce, TwoPendantEncoding) {
  // A_1 carries b_0 and b_1: |0-bar> = |(000) 1 1>, |1-bar> = |(111) 0 0>.
  Rng rng(1);
  const QuasichainSpec s{2};
  const auto r = reduce_quasichain_to_cluster(s, rng, std::vector<Outcome>{kZ, kY});
  ASSERT_TRUE(r.report.ok);
  for (const auto& d : support(r.sample.post_state)) {
    EXPECT_NE(d[0], d[s.pendant(0)]);
    EXPECT_NE(d[0], d[s.pendant(1)]);
  }
}

TEST(QuasichainReduce, MergedDomainEncoding) {
  // Equal outcomes on A_1, A_2: one domain with basis states
  // |(000)_u 1 (111)_v 0> and its complement (pendants included).
  Rng rng(1);
  const QuasichainSpec s{2};
  const auto r = reduce_quasichain_to_cluster(s, rng, std::vector<Outcome>{kZ, kZ});
  EXPECT_EQ(r.domains.num_domains(), 1);
  EXPECT_TRUE(r.report.ok);
  const auto sup = support(r.sample.post_state);
  EXPECT_EQ(sup.size(), 2u);
  for (const auto& d : sup) {
    EXPECT_NE(d[0], d[1]);
    EXPECT_NE(d[0], d[s.pendant(1)]);
    EXPECT_NE(d[1], d[s.pendant(2)]);
  }
}

TEST(QuasichainReduce, EveryBranchEncodesAChain) {
  for (int n = 1; n <= 4; ++n) {
    const QuasichainSpec s{n};
    int total = 1;
    for (int k = 0; k < n; ++k) total *= 3;
    for (int code = 0; code < total; ++code) {
      std::vector<Outcome> a;
      for (int k = 0, c = code; k < n; ++k, c /= 3) a.push_back(static_cast<Outcome>(c % 3));
      Rng rng(static_cast<std::uint64_t>(code));
      const auto r = reduce_quasichain_to_cluster(s, rng, a, true);
      EXPECT_TRUE(r.report.ok) << n << " " << code;
      EXPECT_TRUE(r.is_path) << n << " " << code;
      ASSERT_TRUE(r.simplified.has_value());
      EXPECT_TRUE(r.simplified->report.ok) << n << " " << code;
      for (int rep : r.simplified->representative) EXPECT_TRUE(s.is_backbone(rep));
    }
  }
}

TEST(QuasichainCouple, IdentityModeEveryResult) {
  const CoupledSystem sys = make_coupled(QuasichainSpec{2}, QuasichainSpec{2}, {1, 1});
  const std::vector<Outcome> a{kZ, kX, kX, kX, kX, kX, kZ, kY, kY, kY, kY, kY};
  Rng rng(2);
  CVec reference;
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      const auto r = couple_chains(sys, CouplingMode::kIdentity, rng, a, std::array<int, 2>{m1, m2});
      EXPECT_TRUE(r.ok) << m1 << m2;
      EXPECT_EQ(r.frame[0], m1 ? 3 : 0);
      EXPECT_EQ(r.frame[1], m2 ? 3 : 0);
      if (reference.size() == 0) reference = r.logical_after;
      EXPECT_NEAR(std::abs(reference.dot(r.logical_after)), 1.0, 1e-9);
    }
  }
}

TEST(QuasichainCouple, IdentityResultZeroZeroIsUnchanged) {
  const CoupledSystem sys = make_coupled(QuasichainSpec{1}, QuasichainSpec{1}, {1, 1});
  Rng rng(3);
  const auto r = couple_chains(sys, CouplingMode::kIdentity, rng, std::vector<Outcome>(8, kZ),
                               std::array<int, 2>{0, 0});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.frame, (std::array<int, 2>{0, 0}));
}

TEST(QuasichainCouple, LogicalCzOnPlusStates) {
  // One backbone site per chain: each chain is a single logical qubit in
  // an X-bar eigenstate.
  const CoupledSystem sys = make_coupled(QuasichainSpec{1}, QuasichainSpec{1}, {1, 2});
  Rng rng(8);
  const auto r = couple_chains(sys, CouplingMode::kLogicalCz, rng, std::vector<Outcome>(8, kZ));
  ASSERT_EQ(r.logical_before.size(), 4);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(r.logical_before(k)), 0.5, 1e-12);
  EXPECT_TRUE(r.ok);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
}

TEST(QuasichainCouple, LogicalCzOnSampledBranches) {
  const CoupledSystem sys = make_coupled(QuasichainSpec{2}, QuasichainSpec{2}, {1, 2});
  Rng rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto r = couple_chains(sys, CouplingMode::kLogicalCz, rng);
    EXPECT_TRUE(r.ok) << k;
    const auto i = couple_chains(sys, CouplingMode::kIdentity, rng, r.outcomes);
    EXPECT_TRUE(i.ok) << k;
  }
}
