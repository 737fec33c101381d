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
#include <span>
#include <string_view>

#include "qirb/pauli.hpp"

namespace qirb {

inline constexpr std::size_t kNumSingleQubitCliffords = 24;

struct PauliImage {
  PauliCode code = PauliCode::I;
  bool negative = false;
  constexpr bool operator==(const PauliImage &) const = default;
};

namespace detail {

struct CliffordRecord {
  std::array<PauliImage, 4> images{};  // indexed by PauliCode
  std::array<char, 8> name{};
};

constexpr PauliImage apply_images(const std::array<PauliImage, 4> &images, PauliImage in) {
  PauliImage out = images[static_cast<std::uint8_t>(in.code)];
  out.negative = out.negative != in.negative;
  return out;
}

/// Images of I, X, Z, Y given the images of X and Z, using Y = iXZ.
constexpr std::array<PauliImage, 4> complete_images(PauliImage x, PauliImage z) {
  int g = product_phase(x.code, z.code);
  // i * (sx A)(sz B) = sx sz i^(1+g) (A xor B); 1+g is 0 or 2 for anticommuting A, B.
  bool negative = (x.negative != z.negative) != (g == 1);
  PauliImage y{static_cast<PauliCode>(static_cast<std::uint8_t>(x.code) ^ static_cast<std::uint8_t>(z.code)), negative};
  return {PauliImage{PauliCode::I, false}, x, z, y};
}

constexpr std::array<CliffordRecord, kNumSingleQubitCliffords> generate_clifford_table() {
  using enum PauliCode;
  constexpr std::array<PauliImage, 4> kGenerators[2] = {
      complete_images({Z, false}, {X, false}),  // H
      complete_images({Y, false}, {Z, false}),  // S
  };
  constexpr char kGeneratorNames[2] = {'H', 'S'};

  std::array<CliffordRecord, kNumSingleQubitCliffords> table{};
  table[0].images = complete_images({X, false}, {Z, false});
  table[0].name[0] = 'I';
  std::size_t count = 1;
  for (std::size_t head = 0; head < count; head++) {
    for (std::size_t g = 0; g < 2; g++) {
      // Apply table[head] first, then the generator.
      std::array<PauliImage, 4> images{};
      for (std::size_t c = 0; c < 4; c++) {
        images[c] = apply_images(kGenerators[g], table[head].images[c]);
      }
      bool seen = false;
      for (std::size_t k = 0; k < count; k++) {
        seen = seen || table[k].images == images;
      }
      if (seen) {
        continue;
      }
      if (count == kNumSingleQubitCliffords) {
        throw "closure produced more than 24 elements";
      }
      CliffordRecord &rec = table[count++];
      rec.images = images;
      std::size_t len = 0;
      if (head != 0) {
        while (table[head].name[len] != '\0') {
          rec.name[len] = table[head].name[len];
          len++;
        }
      }
      if (len + 1 >= rec.name.size()) {
        throw "name too long";
      }
      rec.name[len] = kGeneratorNames[g];
    }
  }
  if (count != kNumSingleQubitCliffords) {
    throw "closure did not produce 24 elements";
  }
  return table;
}

inline constexpr std::array<CliffordRecord, kNumSingleQubitCliffords> kCliffordTable = generate_clifford_table();

}  // namespace detail

/// One of the 24 single-qubit Clifford gates modulo global phase.
///
/// Element k of the table is named by the shortest word over {H, S} found by a
/// breadth-first closure from the identity, written in time order (so "HS"
/// applies H then S).
class SingleQubitClifford {
 public:
  constexpr SingleQubitClifford() = default;

  static SingleQubitClifford from_index(std::size_t index);
  static std::optional<SingleQubitClifford> from_name(std::string_view name);
  /// The Clifford whose X and Z images are as given; nullopt if not a valid Clifford.
  static std::optional<SingleQubitClifford> from_images(PauliImage x_image, PauliImage z_image);
  static SingleQubitClifford identity() {
    return {};
  }
  static SingleQubitClifford hadamard();
  static SingleQubitClifford phase();
  static SingleQubitClifford pauli(PauliCode p);

  constexpr std::uint8_t index() const {
    return index_;
  }
  std::string_view name() const {
    return std::string_view(detail::kCliffordTable[index_].name.data());
  }
  constexpr PauliImage image(PauliCode p) const {
    return detail::kCliffordTable[index_].images[static_cast<std::uint8_t>(p)];
  }
  constexpr PauliImage image(PauliImage p) const {
    return detail::apply_images(detail::kCliffordTable[index_].images, p);
  }

  /// The gate that applies *this and then `next`.
  SingleQubitClifford then(SingleQubitClifford next) const;
  SingleQubitClifford inverse() const;

  constexpr bool operator==(const SingleQubitClifford &) const = default;

 private:
  constexpr explicit SingleQubitClifford(std::uint8_t index) : index_(index) {}
  std::uint8_t index_ = 0;
};

/// Cliffords C with C p C^dagger = +Z or -Z. For p = I this is all 24 gates.
std::span<const SingleQubitClifford> cliffords_rotating_to_z(PauliCode p);

/// Cliffords C with C Z C^dagger = +p, i.e. gates that prepare the +1 eigenstate
/// of p from |0>. For p = I this is all 24 gates.
std::span<const SingleQubitClifford> cliffords_preparing(PauliCode p);

/// The four Pauli gates I, X, Y, Z as table elements.
std::span<const SingleQubitClifford> pauli_gates();

}  // namespace qirb
