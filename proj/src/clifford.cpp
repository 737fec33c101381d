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

#include "qirb/clifford.hpp"

#include <string>
#include <vector>

#include "qirb/errors.hpp"

namespace qirb {

namespace {

struct Lookups {
  std::array<std::vector<SingleQubitClifford>, 4> rotating_to_z;
  std::array<std::vector<SingleQubitClifford>, 4> preparing;
  std::vector<SingleQubitClifford> paulis;
};

const Lookups &lookups() {
  static const Lookups table = [] {
    Lookups out;
    for (std::size_t k = 0; k < kNumSingleQubitCliffords; k++) {
      SingleQubitClifford c = SingleQubitClifford::from_index(k);
      for (std::uint8_t p = 0; p < 4; p++) {
        PauliCode code = static_cast<PauliCode>(p);
        if (code == PauliCode::I || c.image(code).code == PauliCode::Z) {
          out.rotating_to_z[p].push_back(c);
        }
        PauliImage z_image = c.image(PauliCode::Z);
        if (code == PauliCode::I || (z_image.code == code && !z_image.negative)) {
          out.preparing[p].push_back(c);
        }
      }
    }
    for (PauliCode p : {PauliCode::I, PauliCode::X, PauliCode::Y, PauliCode::Z}) {
      out.paulis.push_back(SingleQubitClifford::pauli(p));
    }
    return out;
  }();
  return table;
}

}  // namespace

SingleQubitClifford SingleQubitClifford::from_index(std::size_t index) {
  if (index >= kNumSingleQubitCliffords) {
    throw UsageError("Clifford index " + std::to_string(index) + " out of range");
  }
  return SingleQubitClifford(static_cast<std::uint8_t>(index));
}

std::optional<SingleQubitClifford> SingleQubitClifford::from_name(std::string_view name) {
  for (std::size_t k = 0; k < kNumSingleQubitCliffords; k++) {
    if (std::string_view(detail::kCliffordTable[k].name.data()) == name) {
      return SingleQubitClifford(static_cast<std::uint8_t>(k));
    }
  }
  return std::nullopt;
}

std::optional<SingleQubitClifford> SingleQubitClifford::from_images(PauliImage x_image, PauliImage z_image) {
  for (std::size_t k = 0; k < kNumSingleQubitCliffords; k++) {
    const auto &images = detail::kCliffordTable[k].images;
    if (images[static_cast<std::uint8_t>(PauliCode::X)] == x_image &&
        images[static_cast<std::uint8_t>(PauliCode::Z)] == z_image) {
      return SingleQubitClifford(static_cast<std::uint8_t>(k));
    }
  }
  return std::nullopt;
}

SingleQubitClifford SingleQubitClifford::hadamard() {
  return *from_images({PauliCode::Z, false}, {PauliCode::X, false});
}

SingleQubitClifford SingleQubitClifford::phase() {
  return *from_images({PauliCode::Y, false}, {PauliCode::Z, false});
}

SingleQubitClifford SingleQubitClifford::pauli(PauliCode p) {
  // Conjugation by p negates exactly the Paulis that anticommute with p.
  return *from_images({PauliCode::X, anticommute(p, PauliCode::X)}, {PauliCode::Z, anticommute(p, PauliCode::Z)});
}

SingleQubitClifford SingleQubitClifford::then(SingleQubitClifford next) const {
  return *from_images(next.image(image(PauliCode::X)), next.image(image(PauliCode::Z)));
}

SingleQubitClifford SingleQubitClifford::inverse() const {
  for (std::size_t k = 0; k < kNumSingleQubitCliffords; k++) {
    SingleQubitClifford candidate(static_cast<std::uint8_t>(k));
    if (then(candidate) == SingleQubitClifford()) {
      return candidate;
    }
  }
  throw std::logic_error("Clifford table is not closed under inversion");
}

std::span<const SingleQubitClifford> cliffords_rotating_to_z(PauliCode p) {
  return lookups().rotating_to_z[static_cast<std::uint8_t>(p)];
}

std::span<const SingleQubitClifford> cliffords_preparing(PauliCode p) {
  return lookups().preparing[static_cast<std::uint8_t>(p)];
}

std::span<const SingleQubitClifford> pauli_gates() {
  return lookups().paulis;
}

}  // namespace qirb
