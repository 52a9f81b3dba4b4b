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

#ifndef QLAB_PAULI_HPP_
#define QLAB_PAULI_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/qstate.hpp"

namespace qlab::pauli {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
CMat matrix(Pauli p);

/// i^phase_power times a product of single-qubit Paulis on labeled qubits.
/// Identity factors are never stored.
class PauliString {
 public:
  PauliString() = default;
  PauliString(std::map<std::string, Pauli> factors, int phase_power = 0);

  /// Parses text such as "-X1 Z2 Z5", "+i Y0", "I". Each token is a letter
  /// followed by the qubit label.
  static PauliString parse(std::string_view text);

  /// Single-factor string.
  static PauliString single(const std::string& label, Pauli p);

  int phase_power() const { return phase_; }
  cplx phase() const;
  const std::map<std::string, Pauli>& factors() const { return factors_; }
  Pauli at(const std::string& label) const;
  int weight() const { return static_cast<int>(factors_.size()); }
  bool is_identity() const { return factors_.empty(); }

  PauliString with_phase(int phase_power) const;
  bool commutes_with(const PauliString& other) const;

  /// Renders e.g. "-X1 Z2 Z5"; "+I" for the identity.
  std::string str() const;

  friend PauliString operator*(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_ == b.phase_ && a.factors_ == b.factors_;
  }

 private:
  std::map<std::string, Pauli> factors_;
  int phase_ = 0;  // modulo 4
};

PauliString pauli_multiply(const PauliString& p, const PauliString& q);

/// Maps qubit labels to site indices of a state.
using QubitMap = std::map<std::string, int>;

/// Labels "0", "1", ... mapped to the sites with that index.
QubitMap index_labels(int num_sites);

/// p applied to the state's amplitudes (no renormalization).
CVec apply_pauli(const PauliString& p, const QuditState& psi,
                 const QubitMap& map);

/// || p|psi> - |psi> || <= tol. Throws std::invalid_argument if a label
/// names a site that is not a qubit or is missing from the map.
bool stabilizes(const PauliString& p, const QuditState& psi, double tol,
                const QubitMap& map);
bool stabilizes(const PauliString& p, const QuditState& psi,
                double tol = kCompareTol);

/// Residual || p|psi> - |psi> ||.
double stabilizer_residual(const PauliString& p, const QuditState& psi,
                           const QubitMap& map);

class StabilizerSet {
 public:
  StabilizerSet() = default;
  explicit StabilizerSet(std::vector<PauliString> gens) : gens_(std::move(gens)) {}

  const std::vector<PauliString>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  void add(PauliString p) { gens_.push_back(std::move(p)); }

  /// Symbolic check that every pair commutes.
  bool all_commute() const;

  /// Product of the generators selected by the mask bits.
  PauliString product(const std::vector<bool>& mask) const;

 private:
  std::vector<PauliString> gens_;
};

}  // namespace qlab::pauli

#endif  // QLAB_PAULI_HPP_
