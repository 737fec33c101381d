// Copyright 2026 The QIRB Authors
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

#include "qirb/layer.hpp"

#include <string>

#include "qirb/errors.hpp"

namespace qirb {

WireMask CircuitLayer::measured_mask() const {
  WireMask mask;
  for (std::size_t w : mcm_wires) {
    mask.set(w);
  }
  return mask;
}

WireMask CircuitLayer::gate_mask() const {
  WireMask mask;
  for (const Gate &g : gates) {
    mask.set(g.wire);
    if (g.is_cnot()) {
      mask.set(g.target);
    }
  }
  return mask;
}

std::size_t CircuitLayer::num_single() const {
  std::size_t count = 0;
  for (const Gate &g : gates) {
    count += !g.is_cnot();
  }
  return count;
}

std::size_t CircuitLayer::num_cnot() const {
  return gates.size() - num_single();
}

void CircuitLayer::validate() const {
  if (num_wires == 0 || num_wires > kMaxWires) {
    throw UsageError("Layer wire count " + std::to_string(num_wires) + " outside [1, " + std::to_string(kMaxWires) +
                     "]");
  }
  WireMask used;
  auto claim = [&](std::size_t w, const char *what) {
    if (w >= num_wires) {
      throw UsageError(std::string(what) + " on wire " + std::to_string(w) + " outside a " +
                       std::to_string(num_wires) + "-wire layer");
    }
    if (used[w]) {
      throw UsageError(std::string(what) + " on wire " + std::to_string(w) + " overlaps another operation");
    }
    used.set(w);
  };
  for (const Gate &g : gates) {
    claim(g.wire, g.is_cnot() ? "CNOT" : "Gate");
    if (g.is_cnot()) {
      claim(g.target, "CNOT");
    }
  }
  for (std::size_t k = 0; k < mcm_wires.size(); k++) {
    if (k > 0 && mcm_wires[k] <= mcm_wires[k - 1]) {
      throw UsageError("Measured wires must be listed in strictly ascending order");
    }
    claim(mcm_wires[k], "Measurement");
  }
}

void conjugate_in_place(const Gate &gate, SignedPauli &p) {
  if (gate.is_cnot()) {
    bool xc = p.xs()[gate.wire], zc = p.zs()[gate.wire];
    bool xt = p.xs()[gate.target], zt = p.zs()[gate.target];
    if (xc && zt && (xt == zc)) {
      p.flip_sign();
    }
    p.set(gate.target, make_pauli_code(xt != xc, zt));
    p.set(gate.wire, make_pauli_code(xc, zc != zt));
    return;
  }
  PauliImage img = gate.clifford.image(p.at(gate.wire));
  p.set(gate.wire, img.code);
  if (img.negative) {
    p.flip_sign();
  }
}

SignedPauli conjugate(const CircuitLayer &layer, const SignedPauli &p) {
  if (layer.num_wires != p.num_wires()) {
    throw UsageError("Cannot conjugate a " + std::to_string(p.num_wires()) + "-wire Pauli by a " +
                     std::to_string(layer.num_wires) + "-wire layer");
  }
  if ((p.support() & layer.measured_mask()).any()) {
    throw UsageError("Pauli " + p.str() + " has support on a measured wire");
  }
  SignedPauli out = p;
  for (const Gate &g : layer.gates) {
    conjugate_in_place(g, out);
  }
  return out;
}

}  // namespace qirb
