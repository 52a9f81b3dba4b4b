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

#include <cmath>

#include <gtest/gtest.h>

#include "qlab/gates.hpp"

using namespace qlab;
using namespace qlab::mbqc;

namespace {

constexpr double kPi = 3.14159265358979323846;

QuditState random_qubits(int n, Rng& rng) {
  return QuditState(std::vector<int>(n, 2), random_state_vector(Eigen::Index(1) << n, rng));
}

QuditState on(const CMat& u, const QuditState& s) { return apply_gate(s, {0}, u); }

}  // namespace

TEST(Teleport, ZeroAngleBranches) {
  Rng rng(1);
  const auto psi = random_qubits(1, rng);
  auto r0 = one_bit_teleport(psi, 0.0, OutcomeSource(std::vector<int>{0}));
  EXPECT_TRUE(equal_up_to_global_phase(r0.output, on(gates::H(), psi)));
  auto r1 = one_bit_teleport(psi, 0.0, OutcomeSource(std::vector<int>{1}));
  EXPECT_TRUE(equal_up_to_global_phase(r1.output, on(gates::X() * gates::H(), psi)));
  EXPECT_NEAR((r1.frame.corrections[0] - gates::X()).norm(), 0.0, 1e-15);
  EXPECT_EQ(r1.frame.outcomes.at(0), 1);
}

TEST(Teleport, GeneralAngleBothBranches) {
  Rng rng(2);
  const auto psi = random_qubits(1, rng);
  const double theta = kPi / 3;
  for (int m = 0; m < 2; ++m) {
    auto r = one_bit_teleport(psi, theta, OutcomeSource(std::vector<int>{m}));
    EXPECT_NEAR(r.probabilities[0], 0.5, 1e-12);
    EXPECT_GT(fidelity(r.frame.correct(r.output), on(gates::HZ(theta), psi)), 1 - 1e-12);
    // Raw output is X^m H Z_theta |psi>.
    CMat expect = (m ? gates::X() : gates::I2()) * gates::HZ(theta);
    EXPECT_GT(fidelity(r.output, on(expect, psi)), 1 - 1e-12);
  }
}

TEST(Teleport, OutcomesUnbiased) {
  Rng rng(3);
  const auto psi = random_qubits(1, rng);
  const int n = 10000;
  int ones = 0;
  for (int t = 0; t < n; ++t) {
    ones += one_bit_teleport(psi, 0.7, OutcomeSource(rng)).frame.outcomes.at(0);
  }
  EXPECT_LT(std::abs(ones - n / 2.0), 3 * std::sqrt(n * 0.25));
}

TEST(Wire, AllZeroAnglesAreHadamards) {
  Rng rng(4);
  const auto psi = random_qubits(1, rng);
  for (int len = 1; len <= 4; ++len) {
    std::vector<double> angles(len, 0.0);
    auto r = simulate_wire(angles, psi, OutcomeSource(std::vector<int>(len, 0)));
    CMat h = len % 2 ? gates::H() : gates::I2();
    EXPECT_GT(fidelity(r.output, on(h, psi)), 1 - 1e-12);
  }
}

TEST(Wire, TwoAngleAdaptiveRule) {
  const auto p = wire_pattern({0.4, 1.1});
  ASSERT_EQ(p.measurements.size(), 2u);
  EXPECT_TRUE(p.measurements[0].flip_if.empty());
  EXPECT_EQ(p.measurements[1].flip_if, std::vector<int>{0});
  // Frame X^{m2} Z^{m1}.
  EXPECT_EQ(p.byproducts[0].x, std::vector<int>{1});
  EXPECT_EQ(p.byproducts[0].z, std::vector<int>{0});
}

TEST(Wire, AllBranchesMatchCircuit) {
  Rng rng(5);
  const std::vector<double> angles{0.4, -1.3};
  const auto psi = random_qubits(1, rng);
  const QuditState ideal = on(gates::HZ(angles[1]) * gates::HZ(angles[0]), psi);
  for (int mask = 0; mask < 4; ++mask) {
    auto r = simulate_wire(angles, psi, OutcomeSource(std::vector<int>{mask & 1, mask >> 1}));
    EXPECT_GT(fidelity(r.frame.correct(r.output), ideal), 1 - 1e-9);
    for (double pr : r.probabilities) EXPECT_NEAR(pr, 0.5, 1e-12);
  }
  // Without the sign flip the m1 = 1 branches go wrong.
  auto p = wire_pattern(angles);
  p.measurements[1].flip_if.clear();
  auto r = run_pattern(p, psi, OutcomeSource(std::vector<int>{1, 0}));
  EXPECT_LT(fidelity(r.frame.correct(r.output), ideal), 1 - 1e-3);
}

TEST(Wire, RotationsFromComposition) {
  Rng rng(6);
  const auto psi = random_qubits(1, rng);
  const double theta = 0.9;
  auto p_x = wire_pattern({0.0, theta});  // HZ_theta H = X_theta
  auto p_z = wire_pattern({theta, 0.0});  // H HZ_theta = Z_theta
  const QuditState ix = on(gates::RX(theta), psi);
  const QuditState iz = on(gates::RZ(theta), psi);
  for (int mask = 0; mask < 4; ++mask) {
    OutcomeSource src(std::vector<int>{mask & 1, mask >> 1});
    auto rx = run_pattern(p_x, psi, src);
    auto rz = run_pattern(p_z, psi, src);
    EXPECT_GT(fidelity(rx.frame.correct(rx.output), ix), 1 - 1e-9);
    EXPECT_GT(fidelity(rz.frame.correct(rz.output), iz), 1 - 1e-9);
  }
}

TEST(TwoQubit, DerivedByproducts) {
  const auto p = two_qubit_pattern(0.3, 0.5, -0.2, 1.4);
  ASSERT_EQ(p.byproducts.size(), 2u);
  EXPECT_EQ(p.byproducts[0].x, (std::vector<int>{1, 3}));
  EXPECT_EQ(p.byproducts[0].z, (std::vector<int>{0}));
  EXPECT_EQ(p.byproducts[1].x, (std::vector<int>{0, 4}));
  EXPECT_EQ(p.byproducts[1].z, (std::vector<int>{3}));
}

TEST(TwoQubit, ZeroOutcomesOnProductInputs) {
  const double a1 = 0.3, a2 = 0.5, b1 = -0.2, b2 = 1.4;
  const auto c = two_qubit_circuit(a1, a2, b1, b2);
  for (int bits : {0, 3}) {
    const auto in = QuditState::basis({2, 2}, {bits & 1, bits >> 1});
    auto r = simulate_two_qubit_pattern(a1, a2, b1, b2, in, OutcomeSource(std::vector<int>(4, 0)));
    EXPECT_GT(fidelity(r.output, run_circuit(c, in)), 1 - 1e-12);
  }
}

TEST(TwoQubit, ConditionalPhaseOnOneOne) {
  // All angles zero: (H x H) CZ (H x H). Undoing the outer Hadamards leaves
  // CZ|-,->, whose |11> amplitude has the sign opposite to |00>.
  const auto in = QuditState::basis({2, 2}, {1, 1});
  auto r = simulate_two_qubit_pattern(0, 0, 0, 0, in, OutcomeSource(std::vector<int>(4, 0)));
  const auto inner_state = apply_gate(r.output, {0, 1}, gates::kron(gates::H(), gates::H()));
  const cplx ratio = inner_state.amplitude({1, 1}) / inner_state.amplitude({0, 0});
  EXPECT_NEAR(std::abs(ratio - cplx(-1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inner_state.amplitude({0, 1}) / inner_state.amplitude({0, 0}) - cplx(-1.0)),
              0.0, 1e-12);
}

TEST(TwoQubit, AllSixteenBranches) {
  Rng rng(7);
  const double a1 = 0.3, a2 = 0.5, b1 = -0.2, b2 = 1.4;
  const auto p = two_qubit_pattern(a1, a2, b1, b2);
  for (int t = 0; t < 3; ++t) {
    EXPECT_GT(min_branch_fidelity(p, *p.circuit, random_qubits(2, rng)), 1 - 1e-9);
  }
}

TEST(TwoQubit, CzFromWiresAndPattern) {
  Rng rng(8);
  using K = CircuitGate::Kind;
  Circuit c{{K::kHZ, 0, -1, 0}, {K::kHZ, 1, -1, 0}};
  for (const auto& g : two_qubit_circuit(0, 0, 0, 0)) c.push_back(g);
  c.push_back({K::kHZ, 0, -1, 0});
  c.push_back({K::kHZ, 1, -1, 0});
  const auto p = compile_circuit(c, 2);
  const auto in = random_qubits(2, rng);
  EXPECT_GT(min_branch_fidelity(p, c, in), 1 - 1e-9);
  const QuditState ideal = apply_gate(in, {0, 1}, gates::CZ());
  EXPECT_GT(fidelity(run_circuit(c, in), ideal), 1 - 1e-12);
}

TEST(Compile, MatchesEnumeratedRules) {
  Rng rng(9);
  using K = CircuitGate::Kind;
  for (int t = 0; t < 5; ++t) {
    Circuit c;
    for (int g = 0; g < 5; ++g) {
      if (rng.uniform() < 0.3) {
        c.push_back({K::kCZ, 0, 1, 0});
      } else {
        c.push_back({K::kHZ, static_cast<int>(rng.uniform_int(2)), -1, rng.uniform() * 6});
      }
    }
    const auto p = compile_circuit(c, 2);
    const auto derived = derive_byproducts(p, c);
    ASSERT_EQ(derived.size(), p.byproducts.size());
    for (std::size_t k = 0; k < derived.size(); ++k) {
      EXPECT_EQ(derived[k].x, p.byproducts[k].x);
      EXPECT_EQ(derived[k].z, p.byproducts[k].z);
    }
  }
}

TEST(SmallCircuit, Examples) {
  Rng rng(10);
  using K = CircuitGate::Kind;
  auto id = simulate_small_circuit_via_mbqc({}, 1, 5, rng);
  EXPECT_NEAR(id.min_fidelity, 1.0, 1e-12);
  auto one = simulate_small_circuit_via_mbqc({{K::kHZ, 0, -1, kPi / 4}}, 1, 20, rng);
  EXPECT_GT(one.min_fidelity, 1 - 1e-9);
  Circuit ent{{K::kHZ, 0, -1, 0.2}, {K::kCZ, 0, 1, 0}, {K::kHZ, 1, -1, 0.7}};
  auto two = simulate_small_circuit_via_mbqc(ent, 2, 20, rng);
  EXPECT_GT(two.min_fidelity, 1 - 1e-9);
  Circuit three{{K::kHZ, 0, -1, 0.2}, {K::kCZ, 0, 1, 0}, {K::kCZ, 1, 2, 0},
                {K::kHZ, 2, -1, 1.7}, {K::kHZ, 1, -1, 0.1}, {K::kCZ, 0, 2, 0}};
  auto r3 = simulate_small_circuit_via_mbqc(three, 3, 10, rng);
  EXPECT_GT(r3.min_fidelity, 1 - 1e-9);
  EXPECT_EQ(r3.resource_qubits, 6);
}

TEST(SmallCircuit, ResourceTooLarge) {
  Rng rng(11);
  Circuit c(20, {CircuitGate::Kind::kHZ, 0, -1, 0.1});
  EXPECT_THROW(simulate_small_circuit_via_mbqc(c, 1, 1, rng), std::length_error);
}

TEST(Pattern, Validation) {
  auto p = wire_pattern({0.1, 0.2});
  p.measurements[0].flip_if = {1};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = wire_pattern({0.1, 0.2});
  p.measurements[1].site = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = wire_pattern({0.1});
  p.measurements.push_back({1, Basis::kHZ, 0.0, {}});
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Pattern, JsonRoundTrip) {
  const auto p = two_qubit_pattern(0.1, 0.2, 0.3, 0.4);
  const auto q = MeasurementPattern::from_json(p.to_json());
  EXPECT_EQ(q.to_json().dump(), p.to_json().dump());
  nlohmann::json bad = p.to_json();
  bad["measurements"][0]["basis"] = "Q";
  EXPECT_THROW(MeasurementPattern::from_json(bad), std::invalid_argument);
}

TEST(Pattern, ComputationalMeasurementRemovesQubit) {
  // Z-measuring a neighbour of a |+> leaves |+> or |->.
  MeasurementPattern p;
  p.graph = graph::chain(2);
  p.outputs = {1};
  p.measurements = {{0, Basis::kComputational, 0.0, {}}};
  p.byproducts = {{{}, {0}}};
  for (int m = 0; m < 2; ++m) {
    auto r = run_pattern(p, QuditState(std::vector<int>{}), OutcomeSource(std::vector<int>{m}));
    EXPECT_GT(fidelity(r.frame.correct(r.output), QuditState({2}, gates::ket_plus())), 1 - 1e-12);
  }
}
