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

#include "qlab/peps.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qlab::peps {

namespace {

struct Leg {
  bool phys = false;
  SlotRef ref;
  int dim = 2;
};

std::vector<int> leg_dims(const std::vector<Leg>& legs) {
  std::vector<int> d;
  for (const auto& l : legs) d.push_back(l.dim);
  return d;
}

// Applies a 2 x 2 map to one qubit leg.
void apply_on_leg(const std::vector<Leg>& legs, CVec& v, int leg, const CMat& m) {
  std::size_t stride = 1;
  for (int k = 0; k < leg; ++k) stride *= static_cast<std::size_t>(legs[k].dim);
  const std::size_t block = 2 * stride;
  const std::size_t size = static_cast<std::size_t>(v.size());
  for (std::size_t base = 0; base < size; base += block) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a = v(i);
      const cplx b = v(i + stride);
      v(i) = m(0, 0) * a + m(0, 1) * b;
      v(i + stride) = m(1, 0) * a + m(1, 1) * b;
    }
  }
}

int bit_count(Eigen::Index cols) {
  int k = 0;
  while ((Eigen::Index{1} << k) < cols) ++k;
  return k;
}

}  // namespace

int Network::num_slots(int site) const { return bit_count(projectors.at(site).cols()); }

void Network::validate() const {
  for (const auto& p : projectors) {
    const Eigen::Index c = p.cols();
    if (p.rows() < 1 || c < 1 || (c & (c - 1)) != 0) {
      throw std::invalid_argument("projector columns must be a power of two");
    }
  }
  std::set<SlotRef> used;
  auto use = [&](const SlotRef& r) {
    if (r.site < 0 || r.site >= num_sites() || r.slot < 0 || r.slot >= num_slots(r.site)) {
      throw std::invalid_argument("slot out of range");
    }
    if (!used.insert(r).second) throw std::invalid_argument("slot used twice");
  };
  for (const auto& b : bonds) {
    if (b.a.site == b.b.site) throw std::invalid_argument("bond within one site");
    if (b.matrix.rows() != 2 || b.matrix.cols() != 2) {
      throw std::invalid_argument("bond matrix must be 2 x 2");
    }
    use(b.a);
    use(b.b);
  }
  for (const auto& [r, v] : caps) {
    if (v.size() != 2) throw std::invalid_argument("cap must be a qubit vector");
    use(r);
  }
}

CVec permute_legs(const std::vector<int>& dims, const CVec& vec, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("bad permutation");
  std::vector<std::size_t> new_stride(n);
  std::size_t s = 1;
  for (int k = 0; k < n; ++k) {
    new_stride[order[k]] = s;
    s *= static_cast<std::size_t>(dims[order[k]]);
  }
  CVec out(vec.size());
  std::vector<int> digit(n, 0);
  std::size_t target = 0;
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    out(static_cast<Eigen::Index>(target)) = vec(i);
    for (int k = 0; k < n; ++k) {
      if (++digit[k] < dims[k]) {
        target += new_stride[k];
        break;
      }
      target -= new_stride[k] * static_cast<std::size_t>(dims[k] - 1);
      digit[k] = 0;
    }
  }
  return out;
}

Contraction contract(const Network& net, std::size_t max_entries) {
  net.validate();
  std::map<SlotRef, std::pair<SlotRef, CMat>> partner;  // matrix maps partner value -> own
  for (const auto& b : net.bonds) {
    partner[b.a] = {b.b, b.matrix};            // own i, partner j: sum_j M_ij
    partner[b.b] = {b.a, b.matrix.transpose()};
  }

  std::vector<Leg> legs;
  CVec t = CVec::Ones(1);
  for (int s = 0; s < net.num_sites(); ++s) {
    const CMat& p = net.projectors[s];
    const int k = net.num_slots(s);
    const Eigen::Index d = p.rows();
    std::vector<int> in_slots, in_legs, out_slots;
    for (int j = 0; j < k; ++j) {
      const SlotRef r{s, j};
      auto it = partner.find(r);
      if (it != partner.end() && it->second.first.site < s) {
        const SlotRef& q = it->second.first;
        int leg = -1;
        for (int l = 0; l < static_cast<int>(legs.size()); ++l) {
          if (!legs[l].phys && legs[l].ref == q) leg = l;
        }
        // Turn the partner's value into this slot's value.
        apply_on_leg(legs, t, leg, it->second.second);
        in_slots.push_back(j);
        in_legs.push_back(leg);
      } else if (!net.caps.count(r)) {
        out_slots.push_back(j);
      }
    }

    std::vector<int> order;
    for (int l = 0; l < static_cast<int>(legs.size()); ++l) {
      if (std::find(in_legs.begin(), in_legs.end(), l) == in_legs.end()) order.push_back(l);
    }
    const int rest = static_cast<int>(order.size());
    for (int l : in_legs) order.push_back(l);
    t = permute_legs(leg_dims(legs), t, order);
    std::vector<Leg> new_legs;
    for (int q = 0; q < rest; ++q) new_legs.push_back(legs[order[q]]);

    const Eigen::Index din = Eigen::Index{1} << in_slots.size();
    const Eigen::Index dout = d << out_slots.size();
    CMat m = CMat::Zero(dout, din);
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      auto bit = [&](int j) { return static_cast<int>((c >> (k - 1 - j)) & 1); };
      cplx w = 1.0;
      for (const auto& [r, v] : net.caps) {
        if (r.site == s) w *= v(bit(r.slot));
      }
      if (w == cplx(0.0)) continue;
      Eigen::Index in = 0, out = 0;
      for (std::size_t q = 0; q < in_slots.size(); ++q) in |= Eigen::Index{bit(in_slots[q])} << q;
      for (std::size_t q = 0; q < out_slots.size(); ++q) out |= Eigen::Index{bit(out_slots[q])} << q;
      for (Eigen::Index row = 0; row < d; ++row) {
        if (p(row, c) != cplx(0.0)) m(row + d * out, in) += w * p(row, c);
      }
    }
    const Eigen::Index r = t.size() / din;
    if (static_cast<std::size_t>(r) * static_cast<std::size_t>(dout) > max_entries) {
      throw std::length_error("network contraction exceeds the size limit");
    }
    const CMat y = Eigen::Map<const CMat>(t.data(), r, din) * m.transpose();
    t = Eigen::Map<const CVec>(y.data(), y.size());
    new_legs.push_back({true, {s, -1}, static_cast<int>(d)});
    for (int j : out_slots) new_legs.push_back({false, {s, j}, 2});
    legs = std::move(new_legs);
  }

  // Physical legs by site, then open slots.
  std::vector<int> order;
  Contraction c;
  for (int s = 0; s < net.num_sites(); ++s) {
    for (int l = 0; l < static_cast<int>(legs.size()); ++l) {
      if (legs[l].phys && legs[l].ref.site == s) {
        order.push_back(l);
        c.phys_dims.push_back(legs[l].dim);
      }
    }
  }
  std::vector<std::pair<SlotRef, int>> open;
  for (int l = 0; l < static_cast<int>(legs.size()); ++l) {
    if (!legs[l].phys) open.push_back({legs[l].ref, l});
  }
  std::sort(open.begin(), open.end());
  for (const auto& [r, l] : open) {
    order.push_back(l);
    c.open_slots.push_back(r);
  }
  t = permute_legs(leg_dims(legs), t, order);
  const Eigen::Index cols = Eigen::Index{1} << open.size();
  c.amplitudes = Eigen::Map<const CMat>(t.data(), t.size() / cols, cols);
  return c;
}

QuditState contract_state(const Network& net) {
  const Contraction c = contract(net);
  if (!c.open_slots.empty()) throw std::invalid_argument("network has open slots");
  total_dimension(c.phys_dims);
  return QuditState(c.phys_dims, c.amplitudes.col(0));
}

}  // namespace qlab::peps
