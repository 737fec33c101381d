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

#include "qirb/builder.hpp"

#include <stdexcept>
#include <string>

#include "qirb/clifford.hpp"
#include "qirb/errors.hpp"

namespace qirb {

namespace {

SingleQubitClifford pick(std::span<const SingleQubitClifford> options, Rng &rng) {
  return options[uniform_index(rng, options.size())];
}

CircuitLayer empty_layer(std::size_t n) {
  CircuitLayer layer;
  layer.num_wires = n;
  return layer;
}

}  // namespace

std::string TargetPauli::str() const {
  std::string out(1, negative ? '-' : '+');
  for (std::uint8_t bit : z) {
    out.push_back(bit ? 'Z' : 'I');
  }
  return out;
}

TargetPauli TargetPauli::from_string(std::string_view text) {
  TargetPauli out;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    out.negative = text.front() == '-';
    text.remove_prefix(1);
  }
  for (char c : text) {
    if (c != 'I' && c != 'Z') {
      throw UsageError(std::string("Target Pauli may only contain I and Z, found '") + c + "'");
    }
    out.z.push_back(c == 'Z');
  }
  return out;
}

QirbCircuit build_qirb_circuit(std::size_t num_wires, std::span<const CircuitLayer> core, bool reset, Rng &rng) {
  const std::size_t n = num_wires;
  if (n == 0 || n > kMaxWires) {
    throw UsageError("Wire count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxWires) + "]");
  }
  std::size_t m = 0;
  for (std::size_t i = 0; i < core.size(); i++) {
    core[i].validate();
    if (core[i].num_wires != n) {
      throw UsageError("Core layer " + std::to_string(i) + " acts on " + std::to_string(core[i].num_wires) +
                       " wires, expected " + std::to_string(n));
    }
    m += core[i].num_mcm();
  }

  QirbCircuit circuit;
  circuit.num_wires = n;
  circuit.num_mcms = m;
  circuit.reset = reset;
  circuit.target.z.assign(n + m, 0);
  circuit.discard_mask.assign(n + m, 0);

  // The random Pauli s over n + m virtual wires: n physical entries, then one
  // per MCM.
  SignedPauli tracked = random_pauli(n, rng);
  std::vector<PauliCode> fresh(m);
  for (PauliCode &code : fresh) {
    code = static_cast<PauliCode>(uniform_index(rng, 4));
  }
  circuit.initial = tracked;

  circuit.prep = empty_layer(n);
  for (std::size_t q = 0; q < n; q++) {
    circuit.prep.gates.push_back(Gate::single(pick(cliffords_preparing(tracked.at(q)), rng), q));
  }

  const WireMask all = wire_range_mask(n);
  std::size_t slot = 0;
  for (std::size_t i = 0; i < core.size(); i++) {
    DressedLayer dl;
    dl.l2 = core[i];
    dl.l2.reset = reset;
    const WireMask measured = dl.l2.measured_mask();

    dl.l1 = empty_layer(n);
    for (std::size_t q = 0; q < n; q++) {
      auto options = measured[q] ? cliffords_rotating_to_z(tracked.at(q)) : pauli_gates();
      dl.l1.gates.push_back(Gate::single(pick(options, rng), q));
    }
    tracked = conjugate(dl.l1, tracked);

    dl.pre_meas_component = tracked.restricted_to(measured);
    if (!dl.pre_meas_component.is_z_type()) {
      throw std::logic_error("Dressing failed to rotate the tracked Pauli to Z on a measured wire");
    }
    dl.post_meas_component = SignedPauli(n);
    const std::size_t first_slot = slot;
    for (std::size_t w : dl.l2.mcm_wires) {
      bool is_z = tracked.at(w) == PauliCode::Z;
      circuit.target.z[slot] = is_z;
      circuit.discard_mask[slot] = !is_z;
      circuit.mcm_bit_order.push_back({i, w});
      slot++;
    }

    tracked = conjugate(dl.l2, tracked.restricted_to(all & ~measured));

    dl.l3 = empty_layer(n);
    for (std::size_t k = 0; k < dl.l2.mcm_wires.size(); k++) {
      std::size_t w = dl.l2.mcm_wires[k];
      PauliCode code = fresh[first_slot + k];
      dl.post_meas_component.set(w, code);
      tracked.set(w, code == PauliCode::I ? PauliCode::I : PauliCode::Z);
    }
    for (std::size_t q = 0; q < n; q++) {
      auto options = measured[q] ? cliffords_preparing(dl.post_meas_component.at(q)) : pauli_gates();
      dl.l3.gates.push_back(Gate::single(pick(options, rng), q));
    }
    tracked = conjugate(dl.l3, tracked);
    circuit.dressed.push_back(std::move(dl));
  }

  circuit.final_layer = empty_layer(n);
  for (std::size_t q = 0; q < n; q++) {
    circuit.final_layer.gates.push_back(Gate::single(pick(cliffords_rotating_to_z(tracked.at(q)), rng), q));
  }
  tracked = conjugate(circuit.final_layer, tracked);
  if (!tracked.is_z_type()) {
    throw std::logic_error("Final layer failed to rotate the tracked Pauli to Z");
  }
  for (std::size_t q = 0; q < n; q++) {
    bool is_z = tracked.at(q) == PauliCode::Z;
    circuit.target.z[m + q] = is_z;
    circuit.discard_mask[m + q] = !is_z;
  }
  circuit.target.negative = tracked.negative();
  return circuit;
}

int classify_outcome(const QirbCircuit &circuit, std::span<const std::uint8_t> outcome, bool frame_flip) {
  if (outcome.size() != circuit.num_outcome_bits()) {
    throw UsageError("Outcome has " + std::to_string(outcome.size()) + " bits, circuit produces " +
                     std::to_string(circuit.num_outcome_bits()));
  }
  bool parity = frame_flip;
  for (std::size_t v = 0; v < outcome.size(); v++) {
    if (outcome[v] > 1) {
      throw UsageError("Outcome bits must be 0 or 1");
    }
    parity ^= circuit.target.z[v] && outcome[v];
  }
  return parity == circuit.target.negative ? 1 : -1;
}

FrameResolution resolve_reset_free(const QirbCircuit &circuit, std::span<const std::uint8_t> outcome,
                                   ResetFreeMode mode) {
  if (circuit.reset) {
    throw UsageError("Circuit resets its measured wires; there is nothing to resolve");
  }
  if (outcome.size() < circuit.num_mcms) {
    throw UsageError("Need " + std::to_string(circuit.num_mcms) + " MCM outcome bits, got " +
                     std::to_string(outcome.size()));
  }
  const std::size_t n = circuit.num_wires;
  const std::size_t m = circuit.num_mcms;
  FrameResolution res;
  res.corrections.assign(n + m, 0);

  if (mode == ResetFreeMode::kFeedforwardX) {
    for (std::size_t j = 0; j < m; j++) {
      if (outcome[j]) {
        res.conditional_x.push_back(circuit.mcm_bit_order[j]);
      }
    }
    return res;
  }

  // Pauli frame relating the physical state to the ideal reset circuit. Only
  // its X part matters for Z readout; signs are irrelevant.
  SignedPauli frame(n);
  std::size_t slot = 0;
  for (const DressedLayer &dl : circuit.dressed) {
    frame = conjugate(dl.l1, frame);
    for (std::size_t w : dl.l2.mcm_wires) {
      res.corrections[slot] = frame.xs()[w];
      frame.set(w, PauliCode::I);
      slot++;
    }
    frame = conjugate(dl.l2, frame);
    slot -= dl.l2.mcm_wires.size();
    for (std::size_t w : dl.l2.mcm_wires) {
      frame.set(w, outcome[slot] ? PauliCode::X : PauliCode::I);
      slot++;
    }
    frame = conjugate(dl.l3, frame);
  }
  frame = conjugate(circuit.final_layer, frame);
  for (std::size_t q = 0; q < n; q++) {
    res.corrections[m + q] = frame.xs()[q];
  }
  for (std::size_t v = 0; v < n + m; v++) {
    res.flip ^= res.corrections[v] && circuit.target.z[v];
  }
  return res;
}

}  // namespace qirb
