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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qirb/pauli.hpp"

namespace qirb {

/// Stochastic Pauli channel on one wire, applied after a gate.
struct OneQubitPauliChannel {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;

  static OneQubitPauliChannel depolarizing(double eps) {
    return {eps, eps, eps};
  }
  /// Depolarizing channel with the given process fidelity 1 - 3 eps.
  static OneQubitPauliChannel from_fidelity(double fidelity) {
    return depolarizing((1.0 - fidelity) / 3.0);
  }
  double total() const {
    return px + py + pz;
  }
  double fidelity() const {
    return 1.0 - total();
  }
  double probability(PauliCode p) const;
  void validate() const;
  bool operator==(const OneQubitPauliChannel &) const = default;
};

/// Stochastic Pauli channel on a CNOT's two wires. Entry index is
/// code(control) | code(target) << 2; entry 0 (II) is implied.
struct TwoQubitPauliChannel {
  std::array<double, 16> probs{};

  static TwoQubitPauliChannel depolarizing(double eps);
  static TwoQubitPauliChannel from_fidelity(double fidelity) {
    return depolarizing((1.0 - fidelity) / 15.0);
  }
  double total() const;
  double fidelity() const {
    return 1.0 - total();
  }
  void validate() const;
  bool operator==(const TwoQubitPauliChannel &) const = default;
};

/// One outcome of a general MCM-layer error: X flips on the measured wires
/// before (a) and after (b) readout and a Pauli on the unmeasured wires.
struct InstrumentTableEntry {
  std::vector<std::uint8_t> pre_flip;
  std::string unmeasured;
  std::vector<std::uint8_t> post_flip;
  double probability = 0.0;
  bool operator==(const InstrumentTableEntry &) const = default;
};

/// Error distribution for layers with exactly `num_measured` MCMs and
/// `num_unmeasured` other wires. The error-free entry is implied.
struct InstrumentTable {
  std::size_t num_measured = 0;
  std::size_t num_unmeasured = 0;
  std::vector<InstrumentTableEntry> entries;

  double total() const;
  void validate() const;
  bool operator==(const InstrumentTable &) const = default;
};

struct InstrumentNoise {
  /// X flip before readout on each measured wire.
  double pre_flip = 0.0;
  /// X flip after readout (and reset) on each measured wire.
  double post_flip = 0.0;
  /// Per-Pauli depolarizing rate on every unmeasured wire of an MCM layer.
  double unmeasured_depolarizing = 0.0;
  /// Replaces the shorthand for layers whose shape matches.
  std::optional<InstrumentTable> table;

  /// The table when one is configured, nullptr otherwise. Throws
  /// UnsupportedModelError if the table was declared for another layer shape.
  const InstrumentTable *table_for(std::size_t num_measured, std::size_t num_unmeasured) const;
  void validate() const;
  bool operator==(const InstrumentNoise &) const = default;
};

struct NoiseModel {
  OneQubitPauliChannel oneq;
  TwoQubitPauliChannel twoq;
  InstrumentNoise mcm;
  /// Flip probability of the terminal readout; defaults to mcm.pre_flip.
  std::optional<double> final_readout_flip;

  double readout_flip() const {
    return final_readout_flip.value_or(mcm.pre_flip);
  }
  bool is_noiseless() const;
  void validate() const;

  /// Depolarizing gates with the given process fidelities and symmetric MCM
  /// flips of probability mcm_flip before and after each measurement.
  static NoiseModel depolarizing(double f1q, double f2q, double mcm_flip);
  static NoiseModel noiseless() {
    return NoiseModel{};
  }
  bool operator==(const NoiseModel &) const = default;
};

}  // namespace qirb
