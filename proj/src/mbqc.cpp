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

#include "qlab/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "qlab/gates.hpp"

namespace qlab::mbqc {

namespace {

constexpr int kMaxResourceQubits = 20;

// A set of sites with XOR semantics.
using SiteSet = std::set<int>;

void toggle(SiteSet& s, int v) {
  if (!s.erase(v)) s.insert(v);
}

SiteSet xor_sets(const SiteSet& a, const SiteSet& b) {
  SiteSet r = a;
  for (int v : b) toggle(r, v);
  return r;
}

std::vector<int> to_vec(const SiteSet& s) { return {s.begin(), s.end()}; }

int parity(const std::vector<int>& sites, const std::map<int, int>& outcomes) {
  int p = 0;
  for (int s : sites) {
    auto it = outcomes.find(s);
    if (it == outcomes.end()) {
      throw std::invalid_argument("rule refers to unmeasured site " + std::to_string(s));
    }
    p ^= it->second;
  }
  return p;
}

// X^x Z^z as a matrix.
CMat pauli_word(int x, int z) {
  CMat m = CMat::Identity(2, 2);
  if (z) m = gates::Z() * m;
  if (x) m = gates::X() * m;
  return m;
}

// Row m of the measurement unitary: projects a site onto <m| U.
CMat measurement_row(Basis basis, double angle, int m) {
  CMat u = basis == Basis::kHZ ? gates::HZ(angle) : gates::I2();
  return u.row(m);
}

// Wire-end bookkeeping shared by compile_circuit: per logical qubit the
// current site and the frame X^{x} Z^{z} as XOR sets of outcomes.
struct WireFrame {
  int site = 0;
  SiteSet x;
  SiteSet z;
};

}  // namespace

void MeasurementPattern::validate() const {
  const int n = graph.num_vertices();
  auto check_site = [n](int s) {
    if (s < 0 || s >= n) throw std::invalid_argument("site " + std::to_string(s) + " out of range");
  };
  for (const auto& v : graph.vertices()) {
    if (v.dim != 2) throw std::invalid_argument("pattern resources must be qubits");
  }
  std::set<int> in_set;
  for (int s : inputs) {
    check_site(s);
    if (!in_set.insert(s).second) throw std::invalid_argument("duplicate input site");
  }
  std::set<int> out_set;
  for (int s : outputs) {
    check_site(s);
    if (!out_set.insert(s).second) throw std::invalid_argument("duplicate output site");
  }
  std::set<int> measured;
  for (const auto& m : measurements) {
    check_site(m.site);
    if (out_set.count(m.site)) throw std::invalid_argument("output site is measured");
    for (int f : m.flip_if) {
      if (!measured.count(f)) {
        throw std::invalid_argument("adaptivity of site " + std::to_string(m.site) +
                                    " refers to a site not measured earlier");
      }
    }
    if (!measured.insert(m.site).second) {
      throw std::invalid_argument("site " + std::to_string(m.site) + " measured twice");
    }
  }
  if (static_cast<int>(measured.size() + out_set.size()) != n) {
    throw std::invalid_argument("every site must be measured or be an output");
  }
  if (!byproducts.empty()) {
    if (byproducts.size() != outputs.size()) {
      throw std::invalid_argument("one byproduct rule per output required");
    }
    for (const auto& r : byproducts) {
      for (int s : r.x) {
        if (!measured.count(s)) throw std::invalid_argument("byproduct refers to unmeasured site");
      }
      for (int s : r.z) {
        if (!measured.count(s)) throw std::invalid_argument("byproduct refers to unmeasured site");
      }
    }
  }
}

nlohmann::json MeasurementPattern::to_json() const {
  nlohmann::json j;
  j["graph"] = graph.to_json();
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["measurements"] = nlohmann::json::array();
  for (const auto& m : measurements) {
    j["measurements"].push_back({{"site", m.site},
                                 {"basis", m.basis == Basis::kHZ ? "HZ" : "Z"},
                                 {"angle", m.angle},
                                 {"flip_if", m.flip_if}});
  }
  if (!byproducts.empty()) {
    nlohmann::json x = nlohmann::json::array(), z = nlohmann::json::array();
    for (const auto& r : byproducts) {
      x.push_back(r.x);
      z.push_back(r.z);
    }
    j["byproducts"] = {{"x", x}, {"z", z}};
  }
  if (circuit) {
    j["circuit"] = nlohmann::json::array();
    for (const auto& g : *circuit) {
      if (g.kind == CircuitGate::Kind::kHZ) {
        j["circuit"].push_back({{"gate", "HZ"}, {"qubit", g.qubit}, {"angle", g.angle}});
      } else {
        j["circuit"].push_back({{"gate", "CZ"}, {"qubits", {g.qubit, g.qubit2}}});
      }
    }
  }
  return j;
}

MeasurementPattern MeasurementPattern::from_json(const nlohmann::json& j) {
  for (const char* key : {"graph", "inputs", "outputs", "measurements"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("pattern JSON needs \"") + key + "\"");
  }
  MeasurementPattern p;
  p.graph = graph::SiteGraph::from_json(j["graph"]);
  p.inputs = j["inputs"].get<std::vector<int>>();
  p.outputs = j["outputs"].get<std::vector<int>>();
  for (const auto& jm : j["measurements"]) {
    PatternMeasurement m;
    m.site = jm.at("site").get<int>();
    const std::string basis = jm.value("basis", std::string("HZ"));
    if (basis == "HZ") {
      m.basis = Basis::kHZ;
    } else if (basis == "Z") {
      m.basis = Basis::kComputational;
    } else {
      throw std::invalid_argument("unknown basis " + basis);
    }
    m.angle = jm.value("angle", 0.0);
    m.flip_if = jm.value("flip_if", std::vector<int>{});
    p.measurements.push_back(m);
  }
  if (j.contains("byproducts")) {
    const auto x = j["byproducts"].at("x").get<std::vector<std::vector<int>>>();
    const auto z = j["byproducts"].at("z").get<std::vector<std::vector<int>>>();
    if (x.size() != z.size()) throw std::invalid_argument("byproduct x/z length mismatch");
    for (std::size_t k = 0; k < x.size(); ++k) p.byproducts.push_back({x[k], z[k]});
  }
  if (j.contains("circuit")) {
    Circuit c;
    for (const auto& jg : j["circuit"]) {
      CircuitGate g;
      const std::string name = jg.at("gate").get<std::string>();
      if (name == "HZ") {
        g.kind = CircuitGate::Kind::kHZ;
        g.qubit = jg.at("qubit").get<int>();
        g.angle = jg.value("angle", 0.0);
      } else if (name == "CZ") {
        g.kind = CircuitGate::Kind::kCZ;
        const auto q = jg.at("qubits").get<std::vector<int>>();
        if (q.size() != 2) throw std::invalid_argument("CZ needs two qubits");
        g.qubit = q[0];
        g.qubit2 = q[1];
      } else {
        throw std::invalid_argument("unknown gate " + name);
      }
      c.push_back(g);
    }
    p.circuit = c;
  }
  p.validate();
  return p;
}

QuditState ByproductFrame::correct(const QuditState& raw) const {
  if (static_cast<int>(corrections.size()) != raw.num_sites()) {
    throw std::invalid_argument("frame size does not match output");
  }
  QuditState s = raw;
  for (int k = 0; k < raw.num_sites(); ++k) s = apply_gate(s, {k}, corrections[k].adjoint());
  return s;
}

OutcomeSelector OutcomeSource::next(std::size_t k) const {
  if (rng_) return OutcomeSelector(*rng_);
  if (k >= forced_.size()) throw std::invalid_argument("not enough forced outcomes");
  return OutcomeSelector(forced_[k]);
}

PatternRun run_pattern(const MeasurementPattern& p, const QuditState& input,
                       const OutcomeSource& outcomes) {
  p.validate();
  const int n = p.graph.num_vertices();
  if (n > kMaxResourceQubits) throw std::length_error("resource exceeds 20 qubits");
  if (input.num_sites() != static_cast<int>(p.inputs.size())) {
    throw std::invalid_argument("input size does not match pattern inputs");
  }
  for (int k = 0; k < input.num_sites(); ++k) {
    if (input.dim(k) != 2) throw std::invalid_argument("input must be qubits");
  }
  // Inputs first, then |+> on the remaining sites; permute into place.
  std::vector<int> order(n, -1);
  for (std::size_t k = 0; k < p.inputs.size(); ++k) order[p.inputs[k]] = static_cast<int>(k);
  std::vector<CVec> plus;
  int next = static_cast<int>(p.inputs.size());
  for (int v = 0; v < n; ++v) {
    if (order[v] < 0) {
      order[v] = next++;
      plus.push_back(gates::ket_plus());
    }
  }
  QuditState all = input;
  if (input.num_sites() == 0) {
    all = QuditState::product(plus);
  } else if (!plus.empty()) {
    all = tensor(input, QuditState::product(plus));
  }
  all = permute_sites(all, order);

  std::vector<int> dims = all.dims();
  CVec v = all.amps();
  for (const auto& [a, b] : p.graph.edges()) apply_local_inplace(dims, v, {a, b}, gates::CZ());

  PatternRun run;
  for (std::size_t k = 0; k < p.measurements.size(); ++k) {
    const auto& m = p.measurements[k];
    const int flip = parity(m.flip_if, run.frame.outcomes);
    const double angle = flip ? -m.angle : m.angle;
    std::vector<CVec> branch(2);
    double prob[2];
    for (int b = 0; b < 2; ++b) {
      std::vector<int> d = dims;
      branch[b] = apply_site_map(d, v, m.site, measurement_row(m.basis, angle, b));
      prob[b] = branch[b].squaredNorm();
    }
    const OutcomeSelector sel = outcomes.next(k);
    int bit;
    if (sel.is_forced()) {
      bit = sel.forced();
      if (bit != 0 && bit != 1) throw std::invalid_argument("forced outcome must be 0 or 1");
      if (prob[bit] <= 1e-12) throw std::runtime_error("forced outcome has zero probability");
    } else {
      bit = sel.rng().uniform() < prob[0] / (prob[0] + prob[1]) ? 0 : 1;
    }
    v = branch[bit] / std::sqrt(prob[bit]);
    dims[m.site] = 1;
    run.frame.outcomes[m.site] = bit;
    run.probabilities.push_back(prob[bit]);
  }
  // Remaining unit sites drop out; reorder to the pattern's output order.
  QuditState rest = drop_unit_sites(QuditState(dims, v));
  std::vector<int> sorted = p.outputs;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> perm;
  for (int o : p.outputs) {
    perm.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), o) - sorted.begin()));
  }
  run.output = permute_sites(rest, perm);
  for (std::size_t k = 0; k < p.byproducts.size(); ++k) {
    run.frame.corrections.push_back(pauli_word(parity(p.byproducts[k].x, run.frame.outcomes),
                                               parity(p.byproducts[k].z, run.frame.outcomes)));
  }
  return run;
}

QuditState run_circuit(const Circuit& c, const QuditState& input) {
  QuditState s = input;
  for (const auto& g : c) {
    if (g.kind == CircuitGate::Kind::kHZ) {
      s = apply_gate(s, {g.qubit}, gates::HZ(g.angle));
    } else {
      s = apply_gate(s, {g.qubit, g.qubit2}, gates::CZ());
    }
  }
  return s;
}

std::vector<ByproductRule> derive_byproducts(const MeasurementPattern& pattern,
                                             const Circuit& circuit) {
  MeasurementPattern p = pattern;
  p.byproducts.clear();
  p.validate();
  const int k = static_cast<int>(p.measurements.size());
  const int nout = static_cast<int>(p.outputs.size());
  if (k > 16) throw std::length_error("too many measurements to enumerate");
  Rng rng(0x5eed);
  const QuditState input(std::vector<int>(p.inputs.size(), 2),
                         random_state_vector(Eigen::Index(1) << p.inputs.size(), rng));
  const QuditState ideal = run_circuit(circuit, input);

  // Pauli word (x bits, z bits) of one branch, found by search.
  auto branch_word = [&](std::uint32_t mask) {
    std::vector<int> forced(k);
    for (int i = 0; i < k; ++i) forced[i] = (mask >> i) & 1;
    const auto run = run_pattern(p, input, OutcomeSource(forced));
    for (std::uint32_t w = 0; w < (1u << (2 * nout)); ++w) {
      QuditState s = ideal;
      for (int o = 0; o < nout; ++o) {
        s = apply_gate(s, {o}, pauli_word((w >> (2 * o)) & 1, (w >> (2 * o + 1)) & 1));
      }
      if (fidelity(s, run.output) > 1 - 1e-9) return w;
    }
    throw std::runtime_error("branch output is not a Pauli image of the circuit output");
  };

  const std::uint32_t base = branch_word(0);
  if (base != 0) throw std::runtime_error("zero-outcome branch needs a correction");
  std::vector<std::uint32_t> unit(k);
  for (int i = 0; i < k; ++i) unit[i] = branch_word(1u << i);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::uint32_t predicted = 0;
    for (int i = 0; i < k; ++i) {
      if ((mask >> i) & 1) predicted ^= unit[i];
    }
    if (branch_word(mask) != predicted) {
      throw std::runtime_error("byproducts are not an XOR rule of outcomes");
    }
  }
  std::vector<ByproductRule> rules(nout);
  for (int o = 0; o < nout; ++o) {
    for (int i = 0; i < k; ++i) {
      if ((unit[i] >> (2 * o)) & 1) rules[o].x.push_back(p.measurements[i].site);
      if ((unit[i] >> (2 * o + 1)) & 1) rules[o].z.push_back(p.measurements[i].site);
    }
    std::sort(rules[o].x.begin(), rules[o].x.end());
    std::sort(rules[o].z.begin(), rules[o].z.end());
  }
  return rules;
}

PatternRun one_bit_teleport(const QuditState& input, double theta,
                            const OutcomeSource& outcomes) {
  MeasurementPattern p;
  p.graph = graph::chain(2);
  p.inputs = {0};
  p.outputs = {1};
  p.measurements = {{0, Basis::kHZ, theta, {}}};
  p.byproducts = {{{0}, {}}};
  return run_pattern(p, input, outcomes);
}

MeasurementPattern compile_circuit(const Circuit& c, int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("need at least one logical qubit");
  MeasurementPattern p;
  std::vector<WireFrame> wires(num_qubits);
  for (int q = 0; q < num_qubits; ++q) {
    wires[q].site = p.graph.add_vertex(graph::Vertex{});
    p.inputs.push_back(wires[q].site);
  }
  // Edges are toggled so that two CZs between the same ends cancel.
  std::set<std::pair<int, int>> edges;
  for (const auto& g : c) {
    if (g.qubit < 0 || g.qubit >= num_qubits) throw std::invalid_argument("gate qubit out of range");
    if (g.kind == CircuitGate::Kind::kHZ) {
      auto& w = wires[g.qubit];
      const int t = p.graph.add_vertex(graph::Vertex{});
      if (t >= kMaxResourceQubits) throw std::length_error("resource exceeds 20 qubits");
      edges.insert({w.site, t});
      p.measurements.push_back({w.site, Basis::kHZ, g.angle, to_vec(w.x)});
      // X^m H RZ X^x Z^z = X^{m + z} Z^{x} H RZ up to phase.
      SiteSet nx = w.z;
      toggle(nx, w.site);
      w.z = w.x;
      w.x = nx;
      w.site = t;
    } else {
      if (g.qubit2 < 0 || g.qubit2 >= num_qubits || g.qubit2 == g.qubit) {
        throw std::invalid_argument("bad CZ qubits");
      }
      auto& a = wires[g.qubit];
      auto& b = wires[g.qubit2];
      std::pair<int, int> e{std::min(a.site, b.site), std::max(a.site, b.site)};
      if (!edges.erase(e)) edges.insert(e);
      const SiteSet za = xor_sets(a.z, b.x);
      b.z = xor_sets(b.z, a.x);
      a.z = za;
    }
  }
  for (const auto& [a, b] : edges) p.graph.add_edge(a, b);
  for (const auto& w : wires) {
    p.outputs.push_back(w.site);
    p.byproducts.push_back({to_vec(w.x), to_vec(w.z)});
  }
  p.circuit = c;
  p.validate();
  return p;
}

Circuit wire_circuit(const std::vector<double>& angles) {
  Circuit c;
  for (double a : angles) c.push_back({CircuitGate::Kind::kHZ, 0, -1, a});
  return c;
}

MeasurementPattern wire_pattern(const std::vector<double>& angles) {
  return compile_circuit(wire_circuit(angles), 1);
}

PatternRun simulate_wire(const std::vector<double>& angles, const QuditState& input,
                         const OutcomeSource& outcomes) {
  return run_pattern(wire_pattern(angles), input, outcomes);
}

Circuit two_qubit_circuit(double a1, double a2, double b1, double b2) {
  using K = CircuitGate::Kind;
  return {{K::kHZ, 0, -1, a1}, {K::kHZ, 1, -1, b1}, {K::kCZ, 0, 1, 0.0},
          {K::kHZ, 0, -1, a2}, {K::kHZ, 1, -1, b2}};
}

MeasurementPattern two_qubit_pattern(double a1, double a2, double b1, double b2) {
  MeasurementPattern p;
  p.graph = graph::SiteGraph(6);
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {3, 4}, {4, 5}, {1, 4}}) p.graph.add_edge(a, b);
  p.inputs = {0, 3};
  p.outputs = {2, 5};
  // Second-layer signs flip on the outcome that teleported onto the same wire.
  p.measurements = {{0, Basis::kHZ, a1, {}},
                    {3, Basis::kHZ, b1, {}},
                    {1, Basis::kHZ, a2, {0}},
                    {4, Basis::kHZ, b2, {3}}};
  p.circuit = two_qubit_circuit(a1, a2, b1, b2);
  p.byproducts = derive_byproducts(p, *p.circuit);
  return p;
}

PatternRun simulate_two_qubit_pattern(double a1, double a2, double b1, double b2,
                                      const QuditState& input,
                                      const OutcomeSource& outcomes) {
  return run_pattern(two_qubit_pattern(a1, a2, b1, b2), input, outcomes);
}

FidelityReport simulate_small_circuit_via_mbqc(const Circuit& c, int num_qubits,
                                               int trials, Rng& rng) {
  const MeasurementPattern p = compile_circuit(c, num_qubits);
  FidelityReport rep;
  rep.resource_qubits = p.graph.num_vertices();
  for (int t = 0; t < trials; ++t) {
    const QuditState input(std::vector<int>(num_qubits, 2),
                           random_state_vector(Eigen::Index(1) << num_qubits, rng));
    const auto run = run_pattern(p, input, OutcomeSource(rng));
    const double f = fidelity(run.frame.correct(run.output), run_circuit(c, input));
    rep.fidelities.push_back(f);
    rep.min_fidelity = std::min(rep.min_fidelity, f);
  }
  return rep;
}

double min_branch_fidelity(const MeasurementPattern& p, const Circuit& c,
                           const QuditState& input) {
  const int k = static_cast<int>(p.measurements.size());
  if (k > 20) throw std::length_error("too many measurements to enumerate");
  const QuditState ideal = run_circuit(c, input);
  double worst = 1.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> forced(k);
    for (int i = 0; i < k; ++i) forced[i] = (mask >> i) & 1;
    const auto run = run_pattern(p, input, OutcomeSource(forced));
    worst = std::min(worst, fidelity(run.frame.correct(run.output), ideal));
  }
  return worst;
}

}  // namespace qlab::mbqc
