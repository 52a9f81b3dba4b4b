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

// Site graphs and the lattice builders.
//
// Labeling is deterministic and row-major. Square patches use
// id = y * w + x. Honeycomb patches use a brick layout: a vertex is
// A(x, y) or B(x, y); A(x, y) is joined to B(x, y) (the pair "ab", A on the
// left), B(x, y) to A(x + 1, y) ("ba"), and A(x, y) to B(x, y + 1)
// ("b over a"). Hexagon (r, c) has corners A(c, r), B(c, r), A(c+1, r),
// B(c+1, r+1), A(c+1, r+1), B(c, r+1). Vertices are numbered by increasing
// (y, 2x + [is B]).

#ifndef QLAB_GRAPH_HPP_
#define QLAB_GRAPH_HPP_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qlab/random.hpp"

namespace qlab::graph {

enum class Sublattice { kNone, kA, kB };

std::string to_string(Sublattice s);
Sublattice sublattice_from_string(const std::string& s);

struct Vertex {
  int id = 0;
  Sublattice sublattice = Sublattice::kNone;
  int dim = 2;
  bool has_position = false;
  double x = 0.0;
  double y = 0.0;
};

class SiteGraph {
 public:
  SiteGraph() = default;

  /// n unlabeled vertices of dimension dim, no edges.
  explicit SiteGraph(int n, int dim = 2);

  int add_vertex(Vertex v);

  /// Adds the undirected edge {a, b}. Throws on self-loops, unknown
  /// endpoints or duplicates.
  void add_edge(int a, int b);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int i) const { return vertices_.at(i); }
  Vertex& vertex(int i) { return vertices_.at(i); }

  /// Edges as (a, b) with a < b, in insertion order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  bool has_edge(int a, int b) const;

  std::vector<int> dims() const;

  /// Subgraph induced by the given vertices, relabeled 0..k-1 in the given
  /// order.
  SiteGraph induced(const std::vector<int>& keep) const;

  bool is_connected(const std::vector<int>& subset) const;

  nlohmann::json to_json() const;
  static SiteGraph from_json(const nlohmann::json& j);

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

SiteGraph chain(int n);
SiteGraph square_patch(int w, int h);
SiteGraph honeycomb_patch(int rows, int cols);

/// Erdos-Renyi graph with edge probability p.
SiteGraph random_graph(int n, double p, Rng& rng);

/// Honeycomb brick coordinates: x, y and whether the vertex is on B.
struct HoneyCoord {
  int x = 0;
  int y = 0;
  bool is_b = false;
};
HoneyCoord honey_coord(const Vertex& v);

/// Every connected vertex subset of the given size (sorted lists).
std::vector<std::vector<int>> connected_subsets(const SiteGraph& g, int size);

}  // namespace qlab::graph

#endif  // QLAB_GRAPH_HPP_
