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

#include "qlab/graph.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "qlab/cluster.hpp"
#include "qlab/gates.hpp"

using namespace qlab;
using graph::SiteGraph;

TEST(Builders, Sizes) {
  EXPECT_EQ(graph::chain(3).num_edges(), 2);
  auto hex = graph::honeycomb_patch(1, 1);
  EXPECT_EQ(hex.num_vertices(), 6);
  EXPECT_EQ(hex.num_edges(), 6);
  for (int v = 0; v < 6; ++v) EXPECT_EQ(hex.degree(v), 2);
  auto sq = graph::square_patch(2, 3);
  EXPECT_EQ(sq.num_vertices(), 6);
  EXPECT_EQ(sq.num_edges(), 2 * (3 - 1) + 3 * (2 - 1));
  auto two = graph::honeycomb_patch(1, 2);
  EXPECT_EQ(two.num_vertices(), 10);
  EXPECT_EQ(two.num_edges(), 11);
  EXPECT_THROW(graph::chain(0), std::invalid_argument);
  EXPECT_THROW(graph::honeycomb_patch(0, 2), std::invalid_argument);
}

TEST(Builders, HoneycombTwoColoringAndInteriorDegree) {
  auto g = graph::honeycomb_patch(3, 3);
  for (const auto& [a, b] : g.edges()) {
    EXPECT_NE(g.vertex(a).sublattice, g.vertex(b).sublattice);
  }
  int max_deg = 0;
  for (int v = 0; v < g.num_vertices(); ++v) max_deg = std::max(max_deg, g.degree(v));
  EXPECT_EQ(max_deg, 3);
  // The middle hexagon's corners are interior.
  int deg3 = 0;
  for (int v = 0; v < g.num_vertices(); ++v) deg3 += g.degree(v) == 3 ? 1 : 0;
  EXPECT_GE(deg3, 6);
}

TEST(Builders, HoneycombLabelOrder) {
  auto g = graph::honeycomb_patch(1, 1);
  // Row-major by (y, 2x + isB).
  auto c0 = graph::honey_coord(g.vertex(0));
  auto c1 = graph::honey_coord(g.vertex(1));
  EXPECT_EQ(c0.y, 0);
  EXPECT_FALSE(c0.is_b);
  EXPECT_TRUE(c1.is_b);
  EXPECT_EQ(graph::honey_coord(g.vertex(5)).y, 1);
}

TEST(SiteGraphTest, EdgeErrors) {
  SiteGraph g(3);
  EXPECT_THROW(g.add_edge(0, 0), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 5), std::out_of_range);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(1, 0), std::invalid_argument);
}

TEST(SiteGraphTest, JsonRoundTrip) {
  auto g = graph::honeycomb_patch(1, 2);
  auto h = SiteGraph::from_json(g.to_json());
  EXPECT_EQ(h.to_json().dump(), g.to_json().dump());
  nlohmann::json bad = {{"vertices", {{{"id", 0}}}}, {"edges", {{0, 0}}}};
  EXPECT_THROW(SiteGraph::from_json(bad), std::invalid_argument);
}

TEST(Cluster, EmptyGraphIsPlusProduct) {
  auto s = build_cluster_state(SiteGraph(2));
  QuditState expect = QuditState::product({gates::ket_plus(), gates::ket_plus()});
  EXPECT_TRUE(equal_up_to_global_phase(s, expect, 1e-14));
}

TEST(Cluster, ThreeChainCircuit) {
  // S23 S12 H1 H2 H3 |000>, written with explicit matrices.
  CMat h3 = gates::kron_all({gates::H(), gates::H(), gates::H()});
  CMat s12 = gates::kron(gates::CZ(), gates::I2());
  CMat s23 = gates::kron(gates::I2(), gates::CZ());
  CVec zero = CVec::Zero(8);
  zero(0) = 1;
  CVec big_endian = s23 * s12 * h3 * zero;
  // Convert qubit-1-most-significant order to the little-endian layout.
  QuditState expect = permute_sites(QuditState({2, 2, 2}, big_endian), {2, 1, 0});
  EXPECT_TRUE(equal_up_to_global_phase(build_cluster_state(graph::chain(3)), expect, 1e-14));
}

TEST(Cluster, StabilizersOfThreeChain) {
  auto s = build_cluster_state(graph::chain(3));
  auto gens = cluster_stabilizer_generators(graph::chain(3));
  ASSERT_EQ(gens.size(), 3u);
  EXPECT_EQ(gens.generators()[0].str(), "+X0 Z1");
  EXPECT_EQ(gens.generators()[1].str(), "+Z0 X1 Z2");
  EXPECT_EQ(gens.generators()[2].str(), "+Z1 X2");
  for (const auto& g : gens.generators()) EXPECT_TRUE(pauli::stabilizes(g, s));
}

TEST(Cluster, GeneratorsOnManyGraphs) {
  Rng rng(21);
  std::vector<SiteGraph> graphs{graph::square_patch(2, 2), graph::honeycomb_patch(1, 1),
                                graph::square_patch(3, 3)};
  for (int t = 0; t < 10; ++t) graphs.push_back(graph::random_graph(2 + t % 8, 0.4, rng));
  for (const auto& g : graphs) {
    auto s = build_cluster_state(g);
    auto gens = cluster_stabilizer_generators(g);
    EXPECT_TRUE(gens.all_commute());
    for (int j = 0; j < g.num_vertices(); ++j) {
      EXPECT_EQ(gens.generators()[j].weight(), 1 + g.degree(j));
      EXPECT_TRUE(pauli::stabilizes(gens.generators()[j], s));
    }
    // Random products of generators also stabilize.
    for (int r = 0; r < 5; ++r) {
      std::vector<bool> mask(gens.size());
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.uniform() < 0.5;
      EXPECT_TRUE(pauli::stabilizes(gens.product(mask), s));
    }
  }
}

TEST(Cluster, HoneycombGeneratorWeights) {
  auto g = graph::honeycomb_patch(2, 2);
  auto gens = cluster_stabilizer_generators(g);
  for (int j = 0; j < g.num_vertices(); ++j) {
    EXPECT_EQ(gens.generators()[j].weight(), 1 + g.degree(j));
  }
}

TEST(Cluster, EdgeOrderInvariance) {
  auto g = graph::square_patch(3, 2);
  auto edges = g.edges();
  std::reverse(edges.begin(), edges.end());
  EXPECT_TRUE(equal_up_to_global_phase(build_cluster_state(g),
                                       build_cluster_state(g, edges), 1e-14));
}

TEST(Cluster, NonQubitVertexThrows) {
  SiteGraph g(2, 3);
  EXPECT_THROW(build_cluster_state(g), std::invalid_argument);
}

TEST(ClusterHamiltonian, SingleVertex) {
  auto h = cluster_hamiltonian(SiteGraph(1));
  auto gi = ground_info(h);
  EXPECT_NEAR(gi.ground_energy, -1.0, 1e-12);
  EXPECT_EQ(gi.degeneracy, 1);
  QuditState plus({2}, gates::ket_plus());
  EXPECT_NEAR(std::abs(plus.amps().dot(gi.ground_space.col(0))), 1.0, 1e-12);
}

TEST(ClusterHamiltonian, ThreeChainSpectrum) {
  auto g = graph::chain(3);
  auto gi = ground_info(cluster_hamiltonian(g));
  EXPECT_NEAR(gi.ground_energy, -3.0, 1e-12);
  EXPECT_EQ(gi.degeneracy, 1);
  EXPECT_NEAR(gi.gap, 2.0, 1e-12);
}

TEST(ClusterHamiltonian, UniqueGroundStateUpToTwelve) {
  Rng rng(33);
  std::vector<SiteGraph> graphs{graph::chain(12), graph::square_patch(3, 4),
                                graph::honeycomb_patch(1, 2)};
  for (int t = 0; t < 4; ++t) graphs.push_back(graph::random_graph(6 + t, 0.35, rng));
  for (const auto& g : graphs) {
    auto c = check_ground_state(cluster_hamiltonian(g), build_cluster_state(g));
    EXPECT_NEAR(c.energy, -g.num_vertices(), 1e-10);
    EXPECT_LT(c.residual, 1e-10);
    EXPECT_GT(c.gap, 1e-4);
  }
}

TEST(ConnectedSubsets, Path) {
  auto subsets = graph::connected_subsets(graph::chain(4), 3);
  EXPECT_EQ(subsets.size(), 2u);
}
