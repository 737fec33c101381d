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
#include <vector>

#include "qirb/clifford.hpp"
#include "qirb/pauli.hpp"

namespace qirb {

struct Gate {
  enum class Kind : std::uint8_t { kSingle, kCnot };

  Kind kind = Kind::kSingle;
  SingleQubitClifford clifford;
  /// Target of a single-qubit gate, or the control of a CNOT.
  std::size_t wire = 0;
  /// CNOT target; unused for single-qubit gates.
  std::size_t target = 0;

  static Gate single(SingleQubitClifford c, std::size_t wire) {
    return Gate{Kind::kSingle, c, wire, 0};
  }
  static Gate cnot(std::size_t control, std::size_t target) {
    return Gate{Kind::kCnot, SingleQubitClifford(), control, target};
  }

  bool is_cnot() const {
    return kind == Kind::kCnot;
  }
  bool operator==(const Gate &) const = default;
};

/// One time step: gates on disjoint wires plus an optional set of mid-circuit
/// Z measurements. Wires not touched by a gate or a measurement idle.
struct CircuitLayer {
  std::size_t num_wires = 0;
  std::vector<Gate> gates;
  /// Measured wires in ascending order.
  std::vector<std::size_t> mcm_wires;
  /// Whether measured wires are returned to |0> after readout.
  bool reset = true;

  WireMask measured_mask() const;
  WireMask gate_mask() const;
  std::size_t num_single() const;
  std::size_t num_cnot() const;
  std::size_t num_mcm() const {
    return mcm_wires.size();
  }

  /// Throws UsageError unless wires are in range and no wire is used twice.
  void validate() const;

  bool operator==(const CircuitLayer &) const = default;
};

void conjugate_in_place(const Gate &gate, SignedPauli &p);

/// Returns L P L^dagger for the unitary part of `layer`. Throws UsageError if
/// P has support on a measured wire or the wire counts differ.
SignedPauli conjugate(const CircuitLayer &layer, const SignedPauli &p);

}  // namespace qirb
