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

#include "qlab/pauli.hpp"

#include <sstream>
#include <stdexcept>

#include "qlab/gates.hpp"

namespace qlab::pauli {

namespace {

// Product of single-qubit Paulis: a * b = i^phase * result.
std::pair<Pauli, int> mul1(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const int ic = 6 - ia - ib;
  // Cyclic order X -> Y -> Z gives +i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {static_cast<Pauli>(ic), cyclic ? 1 : 3};
}

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

CMat matrix(Pauli p) { return gates::pauli(static_cast<int>(p)); }

PauliString::PauliString(std::map<std::string, Pauli> factors, int phase_power)
    : phase_(((phase_power % 4) + 4) % 4) {
  for (auto& [k, v] : factors) {
    if (v != Pauli::I) factors_.emplace(k, v);
  }
}

PauliString PauliString::single(const std::string& label, Pauli p) {
  return PauliString({{label, p}});
}

PauliString PauliString::parse(std::string_view text) {
  std::string s(text);
  std::istringstream in(s);
  std::string tok;
  int phase = 0;
  std::map<std::string, Pauli> f;
  bool first = true;
  while (in >> tok) {
    if (first) {
      first = false;
      std::size_t pos = 0;
      if (tok[pos] == '+' || tok[pos] == '-') {
        if (tok[pos] == '-') phase += 2;
        ++pos;
      }
      if (pos < tok.size() && tok[pos] == 'i') {
        phase += 1;
        ++pos;
      }
      tok = tok.substr(pos);
      if (tok.empty()) continue;
    }
    Pauli p;
    switch (tok[0]) {
      case 'I':
        p = Pauli::I;
        break;
      case 'X':
        p = Pauli::X;
        break;
      case 'Y':
        p = Pauli::Y;
        break;
      case 'Z':
        p = Pauli::Z;
        break;
      default:
        throw std::invalid_argument("bad Pauli token: " + tok);
    }
    const std::string label = tok.substr(1);
    if (p == Pauli::I) continue;
    if (label.empty()) throw std::invalid_argument("Pauli token without label");
    PauliString one({{label, p}});
    PauliString acc(f, phase);
    acc = acc * one;
    f = acc.factors_;
    phase = acc.phase_;
  }
  return PauliString(f, phase);
}

cplx PauliString::phase() const {
  static const cplx kPhases[4] = {1.0, kI, -1.0, -kI};
  return kPhases[phase_];
}

Pauli PauliString::at(const std::string& label) const {
  auto it = factors_.find(label);
  return it == factors_.end() ? Pauli::I : it->second;
}

PauliString PauliString::with_phase(int phase_power) const {
  PauliString p = *this;
  p.phase_ = ((phase_power % 4) + 4) % 4;
  return p;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int anti = 0;
  for (const auto& [k, v] : factors_) {
    const Pauli w = other.at(k);
    if (w != Pauli::I && w != v) ++anti;
  }
  return anti % 2 == 0;
}

std::string PauliString::str() const {
  static const char* kSign[4] = {"+", "+i ", "-", "-i "};
  std::string out = kSign[phase_];
  if (factors_.empty()) return out + "I";
  bool first = true;
  for (const auto& [k, v] : factors_) {
    if (!first) out += ' ';
    out += to_char(v);
    out += k;
    first = false;
  }
  return out;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  std::map<std::string, Pauli> f = a.factors_;
  int phase = a.phase_ + b.phase_;
  for (const auto& [k, v] : b.factors_) {
    auto it = f.find(k);
    if (it == f.end()) {
      f.emplace(k, v);
    } else {
      auto [r, ph] = mul1(it->second, v);
      phase += ph;
      if (r == Pauli::I) {
        f.erase(it);
      } else {
        it->second = r;
      }
    }
  }
  return PauliString(f, phase);
}

PauliString pauli_multiply(const PauliString& p, const PauliString& q) {
  return p * q;
}

QubitMap index_labels(int num_sites) {
  QubitMap m;
  for (int i = 0; i < num_sites; ++i) m.emplace(std::to_string(i), i);
  return m;
}

CVec apply_pauli(const PauliString& p, const QuditState& psi,
                 const QubitMap& map) {
  CVec v = psi.amps();
  for (const auto& [label, f] : p.factors()) {
    auto it = map.find(label);
    if (it == map.end()) {
      throw std::invalid_argument("unknown qubit label " + label);
    }
    if (psi.dim(it->second) != 2) {
      throw std::invalid_argument("label " + label + " is not a qubit site");
    }
    apply_local_inplace(psi.dims(), v, {it->second}, matrix(f));
  }
  return p.phase() * v;
}

double stabilizer_residual(const PauliString& p, const QuditState& psi,
                           const QubitMap& map) {
  return (apply_pauli(p, psi, map) - psi.amps()).norm();
}

bool stabilizes(const PauliString& p, const QuditState& psi, double tol,
                const QubitMap& map) {
  return stabilizer_residual(p, psi, map) <= tol;
}

bool stabilizes(const PauliString& p, const QuditState& psi, double tol) {
  return stabilizes(p, psi, tol, index_labels(psi.num_sites()));
}

bool StabilizerSet::all_commute() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      if (!gens_[i].commutes_with(gens_[j])) return false;
    }
  }
  return true;
}

PauliString StabilizerSet::product(const std::vector<bool>& mask) const {
  PauliString acc;
  for (std::size_t i = 0; i < gens_.size() && i < mask.size(); ++i) {
    if (mask[i]) acc = acc * gens_[i];
  }
  return acc;
}

}  // namespace qlab::pauli
