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

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qirb/rng.hpp"

#ifndef QIRB_MAX_WIRES
#define QIRB_MAX_WIRES 64
#endif

namespace qirb {

inline constexpr std::size_t kMaxWires = QIRB_MAX_WIRES;
using WireMask = std::bitset<kMaxWires>;

/// Two-bit encoding of a single-wire Pauli: bit 0 is the X part, bit 1 the Z part.
enum class PauliCode : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr bool has_x(PauliCode p) {
  return (static_cast<std::uint8_t>(p) & 1) != 0;
}
constexpr bool has_z(PauliCode p) {
  return (static_cast<std::uint8_t>(p) & 2) != 0;
}
constexpr PauliCode make_pauli_code(bool x, bool z) {
  return static_cast<PauliCode>(static_cast<std::uint8_t>(x) | (static_cast<std::uint8_t>(z) << 1));
}
constexpr bool anticommute(PauliCode a, PauliCode b) {
  return ((has_x(a) && has_z(b)) != (has_z(a) && has_x(b)));
}
/// Exponent g in {-1, 0, +1} such that a * b = i^g * (a xor b).
constexpr int product_phase(PauliCode a, PauliCode b) {
  using enum PauliCode;
  if (a == X) return b == Y ? 1 : b == Z ? -1 : 0;
  if (a == Y) return b == Z ? 1 : b == X ? -1 : 0;
  if (a == Z) return b == X ? 1 : b == Y ? -1 : 0;
  return 0;
}

char pauli_char(PauliCode p);
PauliCode pauli_from_char(char c);

/// Exponent of i (mod 4) picked up when multiplying the unsigned Paulis
/// (x1, z1) * (x2, z2) site by site.
int pauli_product_phase(const WireMask &x1, const WireMask &z1, const WireMask &x2, const WireMask &z2);

/// A Hermitian Pauli string on up to kMaxWires wires with a +1 or -1 sign.
class SignedPauli {
 public:
  SignedPauli() = default;
  explicit SignedPauli(std::size_t num_wires);

  /// Parses text such as "+XIZ", "-Y" or "ZZ" (an omitted sign means +).
  static SignedPauli from_string(std::string_view text);

  std::size_t num_wires() const noexcept {
    return num_wires_;
  }
  const WireMask &xs() const noexcept {
    return xs_;
  }
  const WireMask &zs() const noexcept {
    return zs_;
  }
  bool negative() const noexcept {
    return negative_;
  }
  int sign() const noexcept {
    return negative_ ? -1 : 1;
  }
  void set_negative(bool negative) noexcept {
    negative_ = negative;
  }
  void flip_sign() noexcept {
    negative_ = !negative_;
  }

  PauliCode at(std::size_t wire) const;
  void set(std::size_t wire, PauliCode code);

  WireMask support() const {
    return xs_ | zs_;
  }
  std::size_t weight() const {
    return support().count();
  }
  /// True when every site is I, regardless of sign.
  bool is_identity() const {
    return support().none();
  }
  bool is_z_type() const {
    return xs_.none();
  }
  /// Copy with every wire outside `keep` replaced by I. The sign is retained.
  SignedPauli restricted_to(const WireMask &keep) const;

  std::string str() const;

  bool operator==(const SignedPauli &other) const = default;

 private:
  std::size_t num_wires_ = 0;
  WireMask xs_;
  WireMask zs_;
  bool negative_ = false;
};

bool commutes(const SignedPauli &a, const SignedPauli &b);

inline bool is_z_type(const SignedPauli &p) {
  return p.is_z_type();
}

/// Product a * b. Throws UsageError if the operands anticommute, since the
/// result would not be Hermitian.
SignedPauli multiply(const SignedPauli &a, const SignedPauli &b);

/// Uniformly random unsigned Pauli on n wires (sign is +1).
SignedPauli random_pauli(std::size_t num_wires, Rng &rng);

WireMask wire_range_mask(std::size_t num_wires);

}  // namespace qirb
