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

#include "qlab/cluster.hpp"

#include <stdexcept>
#include <string>

#include "qlab/gates.hpp"

namespace qlab {

namespace {

void require_qubits(const graph::SiteGraph& g) {
  for (const auto& v : g.vertices()) {
    if (v.dim != 2) {
      throw std::invalid_argument("vertex " + std::to_string(v.id) +
                                  " is not a qubit");
    }
  }
}

}  // namespace

QuditState build_cluster_state(const graph::SiteGraph& g,
                               const std::vector<std::pair<int, int>>& edge_order) {
  require_qubits(g);
  const int n = g.num_vertices();
  std::vector<int> dims(n, 2);
  CVec v = CVec::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  v(0) = 1.0;
  for (int j = 0; j < n; ++j) apply_local_inplace(dims, v, {j}, gates::H());
  for (const auto& [a, b] : edge_order) {
    if (!g.has_edge(a, b)) throw std::invalid_argument("edge not in graph");
    apply_local_inplace(dims, v, {a, b}, gates::CZ());
  }
  return QuditState(dims, std::move(v));
}

QuditState build_cluster_state(const graph::SiteGraph& g) {
  return build_cluster_state(g, g.edges());
}

pauli::StabilizerSet cluster_stabilizer_generators(const graph::SiteGraph& g) {
  require_qubits(g);
  pauli::StabilizerSet set;
  for (int j = 0; j < g.num_vertices(); ++j) {
    std::map<std::string, pauli::Pauli> f;
    f[std::to_string(j)] = pauli::Pauli::X;
    for (int k : g.neighbors(j)) f[std::to_string(k)] = pauli::Pauli::Z;
    set.add(pauli::PauliString(f));
  }
  return set;
}

CMat pauli_matrix(const pauli::PauliString& p, const std::vector<std::string>& labels) {
  CMat m = CMat::Identity(1, 1);
  for (const auto& l : labels) m = gates::kron(m, pauli::matrix(p.at(l)));
  for (const auto& [l, f] : p.factors()) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
      throw std::invalid_argument("Pauli factor outside the listed labels");
    }
  }
  return p.phase() * m;
}

LocalHamiltonian cluster_hamiltonian(const graph::SiteGraph& g) {
  require_qubits(g);
  LocalHamiltonian h(g.dims());
  const auto gens = cluster_stabilizer_generators(g);
  for (int j = 0; j < g.num_vertices(); ++j) {
    std::vector<int> sites{j};
    std::vector<std::string> labels{std::to_string(j)};
    for (int k : g.neighbors(j)) {
      sites.push_back(k);
      labels.push_back(std::to_string(k));
    }
    h.add_term(sites, -pauli_matrix(gens.generators()[j], labels),
               gens.generators()[j].str());
  }
  return h;
}

GroundCheck check_ground_state(const LocalHamiltonian& h, const QuditState& psi) {
  GroundCheck c;
  CVec hv;
  h.apply(psi.amps(), hv);
  c.energy = psi.amps().dot(hv).real();
  c.residual = (hv - c.energy * psi.amps()).norm();
  if (h.dimension() <= 1024) {
    // Dense: project out psi and take the lowest remaining eigenvalue.
    const CMat m = h.dense();
    const auto n = m.rows();
    const CMat q = CMat::Identity(n, n) - psi.amps() * psi.amps().adjoint();
    CMat pm = q * m * q;
    pm = (pm + pm.adjoint()) / 2.0;
    // Push psi itself far up so it is never the minimum.
    pm += 1e6 * psi.amps() * psi.amps().adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(pm, Eigen::EigenvaluesOnly);
    c.next_level = es.eigenvalues()(0);
    c.converged = true;
  } else {
    LanczosOptions opts;
    opts.tol = 1e-8;
    opts.max_iter = 600;
    const auto r = lanczos_lowest(h.matvec(), static_cast<Eigen::Index>(h.dimension()),
                                  {psi.amps()}, opts);
    c.next_level = r.value;
    c.converged = r.converged;
  }
  c.gap = c.next_level - c.energy;
  return c;
}

}  // namespace qlab
