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

// Measurement patterns on graph resources.
//
// Measuring a site "in the basis HZ_a" means applying H * RZ(a) and then
// measuring Z. On a wire this sends the logical state |psi> to
// X^m H RZ(a) |psi> on the next site.

#ifndef QLAB_MBQC_HPP_
#define QLAB_MBQC_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qlab/graph.hpp"
#include "qlab/qstate.hpp"

namespace qlab::mbqc {

enum class Basis { kHZ, kComputational };

struct PatternMeasurement {
  int site = 0;
  Basis basis = Basis::kHZ;
  double angle = 0.0;
  // The angle is negated iff the XOR of these sites' outcomes is 1.
  std::vector<int> flip_if;
};

/// One gate of a logical circuit: HZ(angle) on `qubit`, or CZ on
/// (qubit, qubit2).
struct CircuitGate {
  enum class Kind { kHZ, kCZ } kind = Kind::kHZ;
  int qubit = 0;
  int qubit2 = -1;
  double angle = 0.0;
};
using Circuit = std::vector<CircuitGate>;

/// Pauli byproduct rule for one output: X^{xor of x sites} Z^{xor of z}.
struct ByproductRule {
  std::vector<int> x;
  std::vector<int> z;
};

struct MeasurementPattern {
  graph::SiteGraph graph;
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<PatternMeasurement> measurements;
  // Empty means "derive by branch enumeration".
  std::vector<ByproductRule> byproducts;
  // Logical circuit realized by the pattern, for verification.
  std::optional<Circuit> circuit;

  /// Throws std::invalid_argument if adaptivity refers to a later or
  /// unmeasured site, a site is measured twice, or an output is measured.
  void validate() const;

  nlohmann::json to_json() const;
  static MeasurementPattern from_json(const nlohmann::json& j);
};

/// Outcome log plus one 2x2 correction per output. The raw output equals
/// (kron of corrections) times the ideal output, up to a global phase.
struct ByproductFrame {
  std::map<int, int> outcomes;
  std::vector<CMat> corrections;

  /// Applies the inverse corrections.
  QuditState correct(const QuditState& raw) const;
};

struct PatternRun {
  QuditState output;  // raw output on the pattern's outputs, in order
  ByproductFrame frame;
  std::vector<double> probabilities;  // per measurement
};

/// Supplies outcomes: forced bits in measurement order, or random.
class OutcomeSource {
 public:
  explicit OutcomeSource(Rng& rng) : rng_(&rng) {}
  explicit OutcomeSource(std::vector<int> forced) : forced_(std::move(forced)) {}
  OutcomeSelector next(std::size_t k) const;

 private:
  Rng* rng_ = nullptr;
  std::vector<int> forced_;
};

/// Runs the pattern on an input state over the pattern's inputs. Byproduct
/// rules must be present (see derive_byproducts).
PatternRun run_pattern(const MeasurementPattern& p, const QuditState& input,
                       const OutcomeSource& outcomes);

/// Ideal output of a logical circuit.
QuditState run_circuit(const Circuit& c, const QuditState& input);

/// Derives Pauli byproduct rules by enumerating all outcome branches on a
/// generic input: the Pauli of each branch is found by search, then fitted
/// to an XOR rule over measured sites and checked on every branch. Throws
/// std::runtime_error if no consistent rule exists.
std::vector<ByproductRule> derive_byproducts(const MeasurementPattern& p,
                                             const Circuit& circuit);

/// One-bit teleportation: |psi> on site 0, |+> on site 1, CZ, measure
/// site 0 in basis HZ_theta. Output is X^m H RZ(theta) |psi>.
PatternRun one_bit_teleport(const QuditState& input, double theta,
                            const OutcomeSource& outcomes);

/// Wire of length angles.size() + 1; the sign of angle k adapts to the
/// accumulated X byproduct, which for two angles is "flip a2 iff m1 = 1".
/// The wire realizes HZ(a_last) ... HZ(a_1).
MeasurementPattern wire_pattern(const std::vector<double>& angles);
Circuit wire_circuit(const std::vector<double>& angles);
PatternRun simulate_wire(const std::vector<double>& angles,
                         const QuditState& input, const OutcomeSource& outcomes);

/// The 6-vertex two-qubit pattern: edges (0,1),(1,2),(3,4),(4,5),(1,4),
/// inputs 0 and 3, outputs 2 and 5, measuring 0, 3 then 1, 4.
MeasurementPattern two_qubit_pattern(double a1, double a2, double b1, double b2);
Circuit two_qubit_circuit(double a1, double a2, double b1, double b2);
PatternRun simulate_two_qubit_pattern(double a1, double a2, double b1, double b2,
                                      const QuditState& input,
                                      const OutcomeSource& outcomes);

/// Compiles a logical circuit to a pattern: one wire per qubit, each HZ
/// appends a site, each CZ links the current wire ends. Byproducts and
/// adaptive flips follow from Pauli propagation.
MeasurementPattern compile_circuit(const Circuit& c, int num_qubits);

struct FidelityReport {
  std::vector<double> fidelities;
  double min_fidelity = 1.0;
  int resource_qubits = 0;
};

/// Runs the compiled pattern on random inputs with random outcomes and
/// compares the corrected output with the circuit. Throws
/// std::length_error if the resource exceeds 20 qubits.
FidelityReport simulate_small_circuit_via_mbqc(const Circuit& c, int num_qubits,
                                               int trials, Rng& rng);

/// Every outcome branch of a pattern: corrected outputs compared with the
/// circuit. Returns the smallest fidelity.
double min_branch_fidelity(const MeasurementPattern& p, const Circuit& c,
                           const QuditState& input);

}  // namespace qlab::mbqc

#endif  // QLAB_MBQC_HPP_
