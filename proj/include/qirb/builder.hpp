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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qirb/layer.hpp"
#include "qirb/pauli.hpp"
#include "qirb/rng.hpp"

namespace qirb {

enum class ResetFreeMode {
  /// Measured wires are not reset; outcomes are fixed up classically by
  /// propagating a Pauli frame through the rest of the circuit.
  kFrameCorrection,
  /// After each reset-free measurement a noiseless X is applied when the
  /// outcome was 1, returning the wire to |0>.
  kFeedforwardX,
};

/// A core layer with its Pauli dressing: l1 rotates the tracked Pauli on the
/// measured wires to Z, l2 is the core layer, l3 prepares the fresh random
/// component on the measured wires.
struct DressedLayer {
  CircuitLayer l1;
  CircuitLayer l2;
  CircuitLayer l3;
  /// Tracked Pauli on the measured wires just before measurement (Z-type),
  /// carrying the running sign.
  SignedPauli pre_meas_component;
  /// Freshly sampled Pauli placed on the measured wires by l3.
  SignedPauli post_meas_component;

  bool operator==(const DressedLayer &) const = default;
};

/// Sign and Z support over the n + m outcome bits, MCM bits first.
struct TargetPauli {
  std::vector<std::uint8_t> z;
  bool negative = false;

  std::size_t size() const {
    return z.size();
  }
  std::string str() const;
  static TargetPauli from_string(std::string_view text);
  bool operator==(const TargetPauli &) const = default;
};

struct McmSlot {
  std::size_t layer = 0;
  std::size_t wire = 0;
  bool operator==(const McmSlot &) const = default;
};

/// Outcome bits in canonical order: every MCM in time order (layer-major,
/// ascending wire within a layer), then the n final readouts.
using OutcomeString = std::vector<std::uint8_t>;

struct QirbCircuit {
  std::size_t num_wires = 0;
  std::size_t num_mcms = 0;
  bool reset = true;
  /// Random Pauli prepared on the n physical wires at the start.
  SignedPauli initial;
  CircuitLayer prep;
  std::vector<DressedLayer> dressed;
  CircuitLayer final_layer;
  TargetPauli target;
  /// mcm_bit_order[j] is the layer and wire of the j-th MCM outcome bit.
  std::vector<McmSlot> mcm_bit_order;
  /// 1 where the target is I, i.e. the bit does not enter the success parity.
  std::vector<std::uint8_t> discard_mask;

  std::size_t depth() const {
    return dressed.size();
  }
  std::size_t num_outcome_bits() const {
    return num_wires + num_mcms;
  }
  bool operator==(const QirbCircuit &) const = default;
};

/// Builds the randomized benchmarking circuit for `core`. Every core layer must
/// act on `num_wires` wires. The core layers' own reset flags are overridden by
/// `reset`.
QirbCircuit build_qirb_circuit(std::size_t num_wires, std::span<const CircuitLayer> core, bool reset, Rng &rng);

/// +1 for success, -1 for failure. `frame_flip` toggles the parity, as
/// produced by resolve_reset_free in frame-correction mode.
int classify_outcome(const QirbCircuit &circuit, std::span<const std::uint8_t> outcome, bool frame_flip = false);

struct FrameResolution {
  /// Parity correction to pass to classify_outcome.
  bool flip = false;
  /// Per outcome bit: whether the frame carried an X onto that measurement.
  std::vector<std::uint8_t> corrections;
  /// Feedforward mode: the MCMs after which a conditional X fires.
  std::vector<McmSlot> conditional_x;
};

/// Works out how reset-free measurements alter the success parity given the
/// observed MCM outcomes (the first num_mcms entries of `outcome`).
FrameResolution resolve_reset_free(const QirbCircuit &circuit, std::span<const std::uint8_t> outcome,
                                   ResetFreeMode mode);

}  // namespace qirb
