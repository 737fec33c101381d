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
#include "qirb/rng.hpp"

namespace qirb {

/// Stabilizer tableau with destabilizer rows 0..n-1 and stabilizer rows n..2n-1.
class Tableau {
 public:
  /// The all-|0> state on `num_wires` wires.
  explicit Tableau(std::size_t num_wires);

  std::size_t num_wires() const {
    return n_;
  }

  void apply(SingleQubitClifford c, std::size_t wire);
  void apply_cnot(std::size_t control, std::size_t target);
  /// Applies the Pauli gate `p` on `wire` to the state.
  void apply_pauli(PauliCode p, std::size_t wire);
  void apply_x(std::size_t wire) {
    apply_pauli(PauliCode::X, wire);
  }

  /// Measures Z on `wire`, collapsing the state. Random outcomes draw from `rng`.
  bool measure_z(std::size_t wire, Rng &rng);
  bool is_deterministic_z(std::size_t wire) const;

  /// Expectation of a Pauli observable: +1, -1, or 0 when it is not in the
  /// stabilizer group up to sign.
  int peek_expectation(const SignedPauli &observable) const;

  SignedPauli stabilizer(std::size_t k) const;

 private:
  struct Row {
    WireMask x;
    WireMask z;
    bool negative = false;
  };
  static void multiply_into(Row &target, const Row &source);

  std::size_t n_;
  std::vector<Row> rows_;
};

}  // namespace qirb
