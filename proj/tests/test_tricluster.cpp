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

#include "qlab/tricluster.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "qlab/cluster.hpp"
#include "qlab/random.hpp"

using namespace qlab;
using namespace qlab::tri;

namespace {

const Orientation kAll[3] = {Orientation::kAB, Orientation::kBA, Orientation::kBOverA};

std::vector<std::vector<int>> all_choices(int n) {
  std::vector<std::vector<int>> out;
  int total = 1;
  for (int k = 0; k < n; ++k) total *= 3;
  for (int c = 0; c < total; ++c) {
    std::vector<int> v(n);
    int rest = c;
    for (int k = 0; k < n; ++k) {
      v[k] = rest % 3;
      rest /= 3;
    }
    out.push_back(v);
  }
  return out;
}

// Small sub-patches: a path, a star and a bent chain.
std::vector<Patch> small_patches() {
  const Patch hex = honeycomb_patch(1, 1);
  const Patch k33 = k33_patch();
  return {sub_patch(hex, {0, 1}), sub_patch(hex, {0, 1, 3}), sub_patch(hex, {3, 0, 1, 2}),
          sub_patch(k33, {0, 1, 3, 5}), sub_patch(k33, {0, 1, 2, 3})};
}

}  // namespace

TEST(TriPatch, Shapes) {
  const Patch hex = honeycomb_patch(1, 1);
  EXPECT_EQ(hex.num_sites(), 6);
  EXPECT_EQ(hex.edges.size(), 6u);
  int count[3] = {0, 0, 0};
  for (const auto& e : hex.edges) ++count[static_cast<int>(e.orientation)];
  EXPECT_EQ(count[0], 2);
  EXPECT_EQ(count[1], 2);
  EXPECT_EQ(count[2], 2);

  const Patch k33 = k33_patch();
  EXPECT_EQ(k33.edges.size(), 9u);
  for (int a = 0; a < 6; a += 2) {
    for (int b = 1; b < 6; b += 2) EXPECT_GE(k33.edge_index(a, b), 0);
  }
  const Patch t = torus_2x2_patch();
  EXPECT_EQ(t.num_sites(), 8);
  EXPECT_EQ(t.edges.size(), 12u);
  for (int s = 0; s < 8; ++s) EXPECT_EQ(t.graph.degree(s), 3);

  EXPECT_EQ(patch_from_name("1x2").num_sites(), 10);
  EXPECT_EQ(patch_from_name("k33").edges.size(), 9u);
  EXPECT_THROW(patch_from_name("hex"), std::invalid_argument);
}

TEST(TriPatch, ProjectorRowsAreOrthonormal) {
  const CMat p = tricluster_projector();
  EXPECT_TRUE((p * p.adjoint()).isIdentity(1e-15));
  EXPECT_EQ(p(2, 4), cplx(1.0));  // 2~ reads 100
}

TEST(TriState, HexagonIsNormalized) {
  const PepsSpec spec = make_spec(honeycomb_patch(1, 1));
  for (int d : spec.dims()) EXPECT_EQ(d, 4);
  const QuditState psi = build_tricluster(spec);
  EXPECT_NEAR(psi.amps().norm(), 1.0, 1e-12);
  EXPECT_THROW(make_spec(honeycomb_patch(1, 2)), std::length_error);
  const PepsSpec plus = make_spec(honeycomb_patch(1, 1), BoundaryMode::kPlus);
  for (int d : plus.dims()) EXPECT_EQ(d, 6);
}

TEST(TriReduce, LowPairGivesClusterStateOfThePatch) {
  for (const Patch& p : {honeycomb_patch(1, 1), k33_patch()}) {
    for (BoundaryMode mode : {BoundaryMode::kTruncated, BoundaryMode::kPlus}) {
      const PepsSpec spec = make_spec(p, mode);
      const auto r = reduce_tricluster(spec, build_tricluster(spec),
                                       std::vector<int>(p.num_sites(), 0));
      EXPECT_GT(r.overlap, 1 - 1e-9);
      for (int f : r.frame) EXPECT_EQ(f, 0);
    }
  }
}

TEST(TriReduce, UniformHighPairsNeedPhaseFrames) {
  const Patch p = honeycomb_patch(1, 1);
  const PepsSpec spec = make_spec(p);
  const QuditState psi = build_tricluster(spec);
  for (int k = 1; k <= 2; ++k) {
    const auto r = reduce_tricluster(spec, psi, std::vector<int>(6, k));
    EXPECT_GT(r.overlap, 1 - 1e-9);
    const auto found = search_pauli_frame(r.projected, build_cluster_state(p.graph));
    ASSERT_TRUE(found.has_value());
  }
}

TEST(TriReduce, EveryChoiceOnSmallPatches) {
  for (const Patch& p : small_patches()) {
    for (BoundaryMode mode : {BoundaryMode::kTruncated, BoundaryMode::kPlus}) {
      const PepsSpec spec = make_spec(p, mode);
      const QuditState psi = build_tricluster(spec);
      const QuditState target = build_cluster_state(p.graph);
      double total = 0.0;
      for (const auto& c : all_choices(p.num_sites())) {
        const auto r = reduce_tricluster(spec, psi, c);
        total += r.probability;
        EXPECT_GT(r.overlap, 1 - 1e-9) << p.num_sites();
        EXPECT_TRUE(search_pauli_frame(r.projected, target).has_value());
      }
      if (mode == BoundaryMode::kPlus) EXPECT_LE(total, 1 + 1e-12);
    }
  }
}

TEST(TriReduce, FrameSearchRejectsUnrelatedStates) {
  const QuditState a = build_cluster_state(graph::chain(3));
  const QuditState b({2, 2, 2}, CVec::Unit(8, 5));
  EXPECT_FALSE(search_pauli_frame(b, a).has_value());
}

TEST(TriRange, BulkOrientationsHaveRankSixteen) {
  for (Orientation o : kAll) {
    const RangeSpace r = bulk_range(o);
    EXPECT_EQ(r.rank, 16) << to_string(o);
    EXPECT_EQ(r.basis.rows(), 36);
    r.validate();
  }
  EXPECT_GT(subspace_distance(bulk_range(Orientation::kAB).basis,
                              bulk_range(Orientation::kBOverA).basis),
            1e-3);
}

TEST(TriRange, TorusRangesMatchTheBulkAndEachOther) {
  const PepsSpec k33 = make_spec(k33_patch());
  const PepsSpec t8 = make_spec(torus_2x2_patch());
  for (Orientation o : kAll) {
    const CMat bulk = bulk_range(o).basis;
    for (const auto& e : k33.patch.edges) {
      if (e.orientation != o) continue;
      const RangeSpace open = neighbor_range(k33, {e.a, e.b}, o);
      EXPECT_EQ(open.rank, 16);
      EXPECT_LT(subspace_distance(open.basis, bulk), 1e-8);
      const RangeSpace rdm = neighbor_range(k33, {e.a, e.b}, o, RangeSemantics::kReducedDensity);
      EXPECT_EQ(rdm.rank, 16);
      EXPECT_LT(subspace_distance(rdm.basis, bulk), 1e-8);
      break;
    }
    for (const auto& e : t8.patch.edges) {
      if (e.orientation != o) continue;
      const RangeSpace rdm = neighbor_range(t8, {e.a, e.b}, o, RangeSemantics::kReducedDensity);
      EXPECT_EQ(rdm.rank, 16);
      EXPECT_LT(subspace_distance(rdm.basis, bulk), 1e-8);
      break;
    }
  }
  EXPECT_EQ(site_marginal_rank(k33, 0), 6);
}

TEST(TriRange, PairErrors) {
  const PepsSpec spec = make_spec(honeycomb_patch(1, 1));
  EXPECT_THROW(neighbor_range(spec, {0, 4}, Orientation::kAB), std::invalid_argument);
  const auto& e = spec.patch.edges[0];
  const Orientation wrong =
      e.orientation == Orientation::kAB ? Orientation::kBA : Orientation::kAB;
  EXPECT_THROW(neighbor_range(spec, {e.a, e.b}, wrong), std::invalid_argument);
}

TEST(TriHamiltonian, TermsAreRankTwentyAndAnnihilateTheState) {
  for (const Patch& p : {k33_patch(), torus_2x2_patch()}) {
    const PepsSpec spec = make_spec(p);
    const LocalHamiltonian h = build_h_tricluster(spec);
    EXPECT_EQ(h.terms().size(), p.edges.size());
    for (const auto& t : h.terms()) EXPECT_EQ(36 - t.range.cols(), 20);
    EXPECT_LT(max_term_residual(h, build_tricluster(spec)), 1e-9);
  }
  for (BoundaryMode mode : {BoundaryMode::kTruncated, BoundaryMode::kPlus}) {
    const PepsSpec spec = make_spec(honeycomb_patch(1, 1), mode);
    EXPECT_LT(max_term_residual(build_h_tricluster(spec), build_tricluster(spec)), 1e-9);
  }
}

TEST(TriUnic, AllSmallRegionsOfK33) {
  const PepsSpec spec = make_spec(k33_patch());
  int checked = 0;
  for (int size : {3, 4}) {
    for (const auto& region : graph::connected_subsets(spec.patch.graph, size)) {
      const auto r = check_uniqueness_condition(spec, region);
      EXPECT_TRUE(r.holds) << size;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 18 + 15);
}

TEST(TriUnic, RandomRangeBreaksTheCondition) {
  const PepsSpec spec = make_spec(k33_patch());
  const std::vector<int> region{0, 1, 2};
  const int e = spec.patch.edge_index(0, 1);
  Rng rng(5);
  const CMat fake = orthonormal_basis(random_complex_matrix(36, 16, rng));
  const auto r = check_uniqueness_condition(spec, region, {{e, fake}});
  EXPECT_FALSE(r.holds);
  EXPECT_THROW(check_uniqueness_condition(spec, {0, 1}), std::invalid_argument);
  EXPECT_THROW(check_uniqueness_condition(spec, {0, 1, 2, 3, 4}), std::length_error);
  const PepsSpec hex = make_spec(honeycomb_patch(1, 1));
  EXPECT_THROW(check_uniqueness_condition(hex, {0, 5, 3}), std::invalid_argument);
}

TEST(TriGap, MuIsOneHalfOnBothLinks) {
  for (Orientation link : {Orientation::kBA, Orientation::kBOverA}) {
    const MuCheck m = check_mu(link);
    EXPECT_TRUE(m.ok);
    EXPECT_EQ(m.kernel_dim, 64);
    EXPECT_EQ(m.range_dim, 64);
    EXPECT_NEAR(m.mu, 0.5, 1e-9);
  }
  EXPECT_FALSE(check_mu(Orientation::kBA, 0.6).ok);
  EXPECT_THROW(check_mu(Orientation::kAB), std::invalid_argument);
}

TEST(TriGap, K33ChainOfBounds) {
  const PepsSpec spec = make_spec(k33_patch());
  const GapBoundReport r = gap_bound_checks(spec);
  EXPECT_TRUE(r.mu_ok);
  EXPECT_EQ(r.blocks, 3);
  EXPECT_EQ(r.k_terms, 6);
  EXPECT_TRUE(r.c_ok);
  EXPECT_NEAR(r.k_min_nonzero, 2.0 / 3, 1e-6);
  EXPECT_TRUE(r.eta_ok);
  EXPECT_TRUE(r.unique);
  EXPECT_NEAR(r.ground_energy, 0.0, 1e-8);
  EXPECT_NEAR(r.gap, 0.5, 1e-6);
  EXPECT_TRUE(r.gap_ok);
}

TEST(TriGap, OpenHexagonIsNotBlockDecomposable) {
  EXPECT_THROW(ab_blocks(honeycomb_patch(1, 1)), std::invalid_argument);
}
