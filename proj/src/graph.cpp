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
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qlab::graph {

std::string to_string(Sublattice s) {
  switch (s) {
    case Sublattice::kA:
      return "A";
    case Sublattice::kB:
      return "B";
    default:
      return "";
  }
}

Sublattice sublattice_from_string(const std::string& s) {
  if (s == "A") return Sublattice::kA;
  if (s == "B") return Sublattice::kB;
  if (s.empty()) return Sublattice::kNone;
  throw std::invalid_argument("unknown sublattice tag: " + s);
}

SiteGraph::SiteGraph(int n, int dim) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (int i = 0; i < n; ++i) {
    Vertex v;
    v.dim = dim;
    add_vertex(v);
  }
}

int SiteGraph::add_vertex(Vertex v) {
  if (v.dim < 1) throw std::invalid_argument("vertex dimension must be >= 1");
  v.id = static_cast<int>(vertices_.size());
  vertices_.push_back(v);
  adj_.emplace_back();
  return v.id;
}

void SiteGraph::add_edge(int a, int b) {
  const int n = num_vertices();
  if (a < 0 || b < 0 || a >= n || b >= n) {
    throw std::out_of_range("edge endpoint does not exist");
  }
  if (a == b) throw std::invalid_argument("self-loop");
  if (has_edge(a, b)) throw std::invalid_argument("duplicate edge");
  edges_.emplace_back(std::min(a, b), std::max(a, b));
  adj_[a].push_back(b);
  adj_[b].push_back(a);
}

bool SiteGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= num_vertices()) return false;
  const auto& nb = adj_[a];
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

std::vector<int> SiteGraph::dims() const {
  std::vector<int> d;
  for (const auto& v : vertices_) d.push_back(v.dim);
  return d;
}

SiteGraph SiteGraph::induced(const std::vector<int>& keep) const {
  SiteGraph g;
  std::map<int, int> idx;
  for (int v : keep) {
    idx[v] = g.add_vertex(vertex(v));
  }
  for (const auto& [a, b] : edges_) {
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia != idx.end() && ib != idx.end()) g.add_edge(ia->second, ib->second);
  }
  return g;
}

bool SiteGraph::is_connected(const std::vector<int>& subset) const {
  if (subset.empty()) return true;
  std::set<int> in(subset.begin(), subset.end());
  std::set<int> seen{subset.front()};
  std::vector<int> stack{subset.front()};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj_[v]) {
      if (in.count(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == in.size();
}

nlohmann::json SiteGraph::to_json() const {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices_) {
    nlohmann::json jv{{"id", v.id}, {"dim", v.dim}};
    jv["sublattice"] = to_string(v.sublattice);
    if (v.has_position) {
      jv["x"] = v.x;
      jv["y"] = v.y;
    }
    j["vertices"].push_back(jv);
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges_) j["edges"].push_back({a, b});
  return j;
}

SiteGraph SiteGraph::from_json(const nlohmann::json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw std::invalid_argument("graph JSON needs a \"vertices\" array");
  }
  SiteGraph g;
  int expected = 0;
  for (const auto& jv : j["vertices"]) {
    Vertex v;
    if (jv.contains("id") && jv["id"].get<int>() != expected) {
      throw std::invalid_argument("vertex ids must be 0..n-1 in order");
    }
    v.dim = jv.value("dim", 2);
    v.sublattice = sublattice_from_string(jv.value("sublattice", std::string()));
    if (jv.contains("x") && jv.contains("y")) {
      v.has_position = true;
      v.x = jv["x"].get<double>();
      v.y = jv["y"].get<double>();
    }
    g.add_vertex(v);
    ++expected;
  }
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("edges must be pairs");
      }
      g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
  }
  return g;
}

SiteGraph chain(int n) {
  if (n < 1) throw std::invalid_argument("chain length must be positive");
  SiteGraph g;
  for (int i = 0; i < n; ++i) {
    Vertex v;
    v.has_position = true;
    v.x = i;
    g.add_vertex(v);
  }
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

SiteGraph square_patch(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("patch size must be positive");
  SiteGraph g;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Vertex v;
      v.has_position = true;
      v.x = x;
      v.y = y;
      v.sublattice = (x + y) % 2 == 0 ? Sublattice::kA : Sublattice::kB;
      g.add_vertex(v);
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int id = y * w + x;
      if (x + 1 < w) g.add_edge(id, id + 1);
      if (y + 1 < h) g.add_edge(id, id + w);
    }
  }
  return g;
}

SiteGraph honeycomb_patch(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("patch size must be positive");
  }
  using Key = std::tuple<int, int, int>;  // y, 2x + isB, x
  std::set<Key> keys;
  std::set<std::pair<Key, Key>> edge_keys;
  auto key = [](int x, int y, bool b) { return Key{y, 2 * x + (b ? 1 : 0), x}; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Key corners[6] = {key(c, r, false),     key(c, r, true),
                              key(c + 1, r, false), key(c + 1, r + 1, true),
                              key(c + 1, r + 1, false), key(c, r + 1, true)};
      for (int k = 0; k < 6; ++k) {
        keys.insert(corners[k]);
        Key a = corners[k];
        Key b = corners[(k + 1) % 6];
        if (b < a) std::swap(a, b);
        edge_keys.insert({a, b});
      }
    }
  }
  SiteGraph g;
  std::map<Key, int> id;
  for (const auto& k : keys) {
    Vertex v;
    v.dim = 2;
    v.has_position = true;
    v.x = std::get<2>(k);
    v.y = std::get<0>(k);
    v.sublattice = (std::get<1>(k) % 2) ? Sublattice::kB : Sublattice::kA;
    id[k] = g.add_vertex(v);
  }
  std::vector<std::pair<int, int>> es;
  for (const auto& [a, b] : edge_keys) {
    const int ia = id[a];
    const int ib = id[b];
    es.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  std::sort(es.begin(), es.end());
  for (const auto& [a, b] : es) g.add_edge(a, b);
  return g;
}

SiteGraph random_graph(int n, double p, Rng& rng) {
  SiteGraph g = SiteGraph(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) g.add_edge(i, j);
    }
  }
  return g;
}

HoneyCoord honey_coord(const Vertex& v) {
  if (!v.has_position || v.sublattice == Sublattice::kNone) {
    throw std::invalid_argument("vertex has no honeycomb coordinates");
  }
  return HoneyCoord{static_cast<int>(std::lround(v.x)),
                    static_cast<int>(std::lround(v.y)),
                    v.sublattice == Sublattice::kB};
}

std::vector<std::vector<int>> connected_subsets(const SiteGraph& g, int size) {
  std::set<std::vector<int>> found;
  // Grow subsets one neighbor at a time from every vertex.
  std::set<std::vector<int>> frontier;
  for (int v = 0; v < g.num_vertices(); ++v) frontier.insert({v});
  for (int s = 1; s < size; ++s) {
    std::set<std::vector<int>> next;
    for (const auto& sub : frontier) {
      for (int v : sub) {
        for (int w : g.neighbors(v)) {
          if (std::find(sub.begin(), sub.end(), w) != sub.end()) continue;
          auto t = sub;
          t.push_back(w);
          std::sort(t.begin(), t.end());
          next.insert(t);
        }
      }
    }
    frontier.swap(next);
  }
  return {frontier.begin(), frontier.end()};
}

}  // namespace qlab::graph
