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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qlab/gates.hpp"
#include "qlab/linalg.hpp"
#include "qlab/random.hpp"
#include "qlab/spin.hpp"

using namespace qlab;

namespace {

QuditState ghz(int n) {
  std::vector<int> dims(n, 2);
  CVec v = CVec::Zero(1 << n);
  v(0) = 1;
  v((1 << n) - 1) = 1;
  return QuditState(dims, v);
}

}  // namespace

TEST(QuditState, ConstructionNormalizes) {
  CVec v(4);
  v << 1, 2, 3, 4;
  QuditState s({2, 2}, v);
  EXPECT_NEAR(s.amps().norm(), 1.0, 1e-12);
  EXPECT_THROW(QuditState({2, 2}, CVec::Zero(4)), std::domain_error);
  EXPECT_THROW(QuditState({2, 3}, CVec::Ones(4)), std::invalid_argument);
}

TEST(QuditState, LittleEndianIndex) {
  auto s = QuditState::basis({2, 3, 2}, {1, 2, 0});
  EXPECT_EQ(s.index_of({1, 2, 0}), 1u + 2u * 2u);
  EXPECT_NEAR(std::abs(s.amps()(5)), 1.0, 1e-15);
  EXPECT_EQ(s.digits_of(5), (std::vector<int>{1, 2, 0}));
}

TEST(QuditState, CapIsEnforced) {
  EXPECT_THROW(QuditState(std::vector<int>(22, 2)), std::length_error);
  EXPECT_NO_THROW(total_dimension(std::vector<int>(8, 6)));
}

TEST(ApplyGate, CzFlipsOneOne) {
  auto s = QuditState::basis({2, 2}, {1, 1});
  auto t = apply_gate(s, {0, 1}, gates::CZ());
  EXPECT_NEAR((t.amps() + s.amps()).norm(), 0.0, 1e-15);
}

TEST(ApplyGate, HadamardOnZero) {
  QuditState s({2});
  auto t = apply_gate(s, {0}, gates::H());
  EXPECT_NEAR(std::abs(t.amps()(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.amps()(1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(ApplyGate, IdentityLeavesState) {
  Rng rng(1);
  QuditState s({2, 3}, random_state_vector(6, rng));
  auto t = apply_gate(s, {1}, CMat::Identity(3, 3));
  EXPECT_NEAR((t.amps() - s.amps()).norm(), 0.0, 1e-15);
}

TEST(ApplyGate, KroneckerOrderOfSites) {
  // kron(X, I) on sites {0, 1} flips site 0; on {1, 0} it flips site 1.
  QuditState s({2, 2});
  auto a = apply_gate(s, {0, 1}, gates::kron(gates::X(), gates::I2()));
  EXPECT_NEAR(std::abs(a.amplitude({1, 0})), 1.0, 1e-15);
  auto b = apply_gate(s, {1, 0}, gates::kron(gates::X(), gates::I2()));
  EXPECT_NEAR(std::abs(b.amplitude({0, 1})), 1.0, 1e-15);
  // CNOT with control listed first.
  auto c = apply_gate(QuditState::basis({2, 2}, {0, 1}), {1, 0}, gates::CNOT());
  EXPECT_NEAR(std::abs(c.amplitude({1, 1})), 1.0, 1e-15);
}

TEST(ApplyGate, Errors) {
  QuditState s({2, 3});
  EXPECT_THROW(apply_gate(s, {0, 0}, CMat::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, {1}, CMat::Identity(2, 2)), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, {2}, CMat::Identity(2, 2)), std::out_of_range);
}

TEST(ApplyGate, RandomUnitariesPreserveNormAndInvert) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> dims{2, 3, 2, 4};
    QuditState s(dims, random_state_vector(48, rng));
    std::vector<int> sites{static_cast<int>(rng.uniform_int(4))};
    int other = static_cast<int>(rng.uniform_int(4));
    if (other != sites[0]) sites.push_back(other);
    int d = 1;
    for (int q : sites) d *= dims[q];
    CMat u = random_unitary(d, rng);
    ASSERT_TRUE(gates::is_unitary(u));
    CVec v = s.amps();
    apply_local_inplace(dims, v, sites, u);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    apply_local_inplace(dims, v, sites, u.adjoint());
    EXPECT_TRUE(equal_up_to_global_phase(s, QuditState(dims, v), 1e-10));
  }
}

TEST(ApplyGate, MatchesKroneckerOracle) {
  // Full-space oracle: operator on sites {2, 0} of a 3-qubit state.
  Rng rng(3);
  QuditState s({2, 2, 2}, random_state_vector(8, rng));
  CMat u = random_unitary(4, rng);
  auto t = apply_gate(s, {2, 0}, u);
  // Big-endian full matrix over (q2, q1, q0) equals the little-endian index.
  CMat full = CMat::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int i0 = i & 1, i1 = (i >> 1) & 1, i2 = (i >> 2) & 1;
      const int j0 = j & 1, j1 = (j >> 1) & 1, j2 = (j >> 2) & 1;
      if (i1 != j1) continue;
      full(i, j) = u(2 * i2 + i0, 2 * j2 + j0);
    }
  }
  CVec expect = full * s.amps();
  EXPECT_NEAR((t.amps() - expect).norm(), 0.0, 1e-12);
}

TEST(Measure, ZBasis) {
  QuditState zero({2});
  auto r = measure(zero, 0, basis_projectors(2), 0);
  EXPECT_EQ(r.outcome, 0);
  EXPECT_NEAR(r.probability, 1.0, 1e-15);
  QuditState plus({2}, gates::ket_plus());
  auto probs = outcome_probabilities(plus, 0, basis_projectors(2));
  EXPECT_NEAR(probs[0], 0.5, 1e-15);
  EXPECT_NEAR(probs[1], 0.5, 1e-15);
}

TEST(Measure, ForcedZeroProbabilityThrows) {
  QuditState zero({2});
  EXPECT_THROW(measure(zero, 0, basis_projectors(2), 1), std::domain_error);
}

TEST(Measure, IncompleteSetThrows) {
  QuditState zero({2});
  std::vector<CMat> ps{basis_projectors(2)[0]};
  EXPECT_THROW(measure(zero, 0, ps, 0), std::invalid_argument);
}

TEST(Measure, ProbabilitiesSumToOne) {
  Rng rng(11);
  QuditState s({3, 3}, random_state_vector(9, rng));
  CMat u = random_unitary(3, rng);
  std::vector<CMat> ps;
  for (int k = 0; k < 3; ++k) ps.push_back(u.col(k) * u.col(k).adjoint());
  auto p = outcome_probabilities(s, 1, ps);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-10);
}

TEST(Measure, SamplingIsReproducible) {
  QuditState plus({2}, gates::ket_plus());
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(measure(plus, 0, basis_projectors(2), a).outcome,
              measure(plus, 0, basis_projectors(2), b).outcome);
  }
}

TEST(Measure, BornFrequencies) {
  CVec v(2);
  v << std::sqrt(0.3), std::sqrt(0.7);
  QuditState s({2}, v);
  Rng rng(5);
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) ones += measure(s, 0, basis_projectors(2), rng).outcome;
  const double sigma = std::sqrt(0.21 / n);
  EXPECT_NEAR(ones / static_cast<double>(n), 0.7, 4 * sigma);
}

TEST(ReducedDensity, ProductState) {
  auto s = QuditState::basis({2, 2}, {0, 1});
  auto r = reduced_density(s, {0});
  EXPECT_NEAR(std::abs(r.rho(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(r.rho.cwiseAbs().sum(), 1.0, 1e-15);
  EXPECT_THROW(reduced_density(s, {}), std::invalid_argument);
}

TEST(ReducedDensity, GhzPair) {
  auto r = reduced_density(ghz(3), {0, 1});
  CMat expect = CMat::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(3, 3) = 0.5;
  EXPECT_NEAR((r.rho - expect).norm(), 0.0, 1e-12);
}

TEST(ReducedDensity, AllSitesIsProjector) {
  Rng rng(9);
  QuditState s({2, 3, 2}, random_state_vector(12, rng));
  auto r = reduced_density(s, {0, 1, 2});
  // Kronecker order (site 0 most significant) versus little-endian amps.
  auto p = permute_sites(s, {2, 1, 0});
  EXPECT_NEAR((r.rho - p.amps() * p.amps().adjoint()).norm(), 0.0, 1e-12);
}

TEST(ReducedDensity, KeepOrderOracle) {
  Rng rng(4);
  QuditState s({2, 2, 2}, random_state_vector(8, rng));
  auto r01 = reduced_density(s, {0, 1});
  auto r10 = reduced_density(s, {1, 0});
  CMat swap = CMat::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1;
  swap(1, 2) = swap(2, 1) = 1;
  EXPECT_NEAR((swap * r01.rho * swap - r10.rho).norm(), 0.0, 1e-12);
  validate_density(r01);
}

TEST(RangeProjector, Examples) {
  DensityMatrix pure{{2}, CMat::Zero(2, 2)};
  pure.rho(0, 0) = 1;
  auto a = range_projector(pure);
  EXPECT_EQ(a.rank, 1);
  EXPECT_NEAR((a.projector - pure.rho).norm(), 0.0, 1e-12);
  DensityMatrix mixed{{2}, CMat::Identity(2, 2) / 2.0};
  EXPECT_EQ(range_projector(mixed).rank, 2);
}

TEST(RangeProjector, GhzPairKernel) {
  auto g = ghz(4);
  auto r = range_projector(reduced_density(g, {2, 3}));
  EXPECT_EQ(r.rank, 2);
  CMat kernel = CMat::Identity(4, 4) - r.projector;
  CMat expect = CMat::Zero(4, 4);
  expect(1, 1) = expect(2, 2) = 1;
  EXPECT_NEAR((kernel - expect).norm(), 0.0, 1e-12);
  EXPECT_NEAR((r.projector * r.projector - r.projector).norm(), 0.0, 1e-10);
}

TEST(Compare, GlobalPhase) {
  Rng rng(2);
  QuditState s({2, 2}, random_state_vector(4, rng));
  QuditState t({2, 2}, std::polar(1.0, std::numbers::pi / 7) * s.amps());
  EXPECT_TRUE(equal_up_to_global_phase(s, t));
  EXPECT_FALSE(equal_up_to_global_phase(QuditState::basis({2}, {0}),
                                        QuditState::basis({2}, {1})));
  EXPECT_THROW(equal_up_to_global_phase(QuditState({2}), QuditState({3})),
               std::invalid_argument);
}

TEST(SiteMaps, InsertPermuteAndMap) {
  Rng rng(8);
  QuditState s({2, 3}, random_state_vector(6, rng));
  CVec w = random_state_vector(4, rng);
  auto t = insert_site(s, 1, w);
  EXPECT_EQ(t.dims(), (std::vector<int>{2, 4, 3}));
  // Contracting the inserted site with <w| recovers s.
  auto back = drop_unit_sites(apply_map(t, 1, w.adjoint()));
  EXPECT_TRUE(equal_up_to_global_phase(back, s, 1e-12));
  auto p = permute_sites(t, {2, 0, 1});
  EXPECT_EQ(p.dims(), (std::vector<int>{3, 2, 4}));
  EXPECT_NEAR(std::abs(p.amplitude({2, 1, 3}) - t.amplitude({1, 3, 2})), 0.0, 1e-15);
  auto tt = tensor(s, QuditState({2}));
  EXPECT_NEAR(std::abs(tt.amplitude({1, 2, 0}) - s.amplitude({1, 2})), 0.0, 1e-15);
}

TEST(Seeds, DerivedStreamsAreStable) {
  EXPECT_EQ(derive_seed(7, "alpha", 0), derive_seed(7, "alpha", 0));
  EXPECT_NE(derive_seed(7, "alpha", 0), derive_seed(7, "alpha", 1));
  EXPECT_NE(derive_seed(7, "alpha", 0), derive_seed(7, "beta", 0));
  EXPECT_NE(derive_seed(7, "alpha", 0), derive_seed(8, "alpha", 0));
  Rng r(derive_seed(1, "x"));
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Lanczos, MatchesDenseLowest) {
  Rng rng(6);
  CMat a = random_complex_matrix(60, 60, rng);
  CMat h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  MatVec mv = [&](const CVec& in, CVec& out) { out = h * in; };
  auto r = lanczos_lowest(mv, 60, {}, {});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, es.eigenvalues()(0), 1e-8);
  // Deflating the ground vector yields the second eigenvalue.
  auto r2 = lanczos_lowest(mv, 60, {es.eigenvectors().col(0)}, {});
  EXPECT_NEAR(r2.value, es.eigenvalues()(1), 1e-8);
}

TEST(Subspaces, IntersectionAndDistance) {
  CMat a = CMat::Zero(3, 2);
  a(0, 0) = a(1, 1) = 1;
  CMat b = CMat::Zero(3, 2);
  b(1, 0) = b(2, 1) = 1;
  CMat c = subspace_intersection({a, b}, 3);
  ASSERT_EQ(c.cols(), 1);
  EXPECT_NEAR(std::abs(c(1, 0)), 1.0, 1e-12);
  EXPECT_NEAR(subspace_distance(a, a), 0.0, 1e-12);
  EXPECT_NEAR(subspace_distance(a, b), 1.0, 1e-12);
}

TEST(Spin, OneHalfTimesOneProjectors) {
  auto s1 = spin_ops(2);
  auto half = spin_ops(1);
  EXPECT_NEAR((s1.casimir() - 2.0 * CMat::Identity(3, 3)).norm(), 0.0, 1e-12);
  CMat p = total_spin_projector(s1, half, 3);
  EXPECT_NEAR(p.trace().real(), 4.0, 1e-10);
  auto s32 = spin_ops(3);
  EXPECT_NEAR(total_spin_projector(s32, half, 4).trace().real(), 5.0, 1e-10);
}
