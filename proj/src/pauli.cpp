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

#include "qirb/pauli.hpp"

#include "qirb/errors.hpp"

namespace qirb {

char pauli_char(PauliCode p) {
  constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
  return kChars[static_cast<std::uint8_t>(p)];
}

PauliCode pauli_from_char(char c) {
  switch (c) {
    case 'I':
    case '_':
      return PauliCode::I;
    case 'X':
      return PauliCode::X;
    case 'Y':
      return PauliCode::Y;
    case 'Z':
      return PauliCode::Z;
    default:
      throw UsageError(std::string("Not a Pauli character: '") + c + "'");
  }
}

int pauli_product_phase(const WireMask &x1, const WireMask &z1, const WireMask &x2, const WireMask &z2) {
  // Sites contributing +i: XY, YZ, ZX. Sites contributing -i: XZ, YX, ZY.
  WireMask plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
  WireMask minus = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
  int total = static_cast<int>(plus.count()) - static_cast<int>(minus.count());
  return ((total % 4) + 4) % 4;
}

WireMask wire_range_mask(std::size_t num_wires) {
  WireMask mask;
  for (std::size_t q = 0; q < num_wires; q++) {
    mask.set(q);
  }
  return mask;
}

SignedPauli::SignedPauli(std::size_t num_wires) : num_wires_(num_wires) {
  if (num_wires > kMaxWires) {
    throw UsageError("SignedPauli supports at most " + std::to_string(kMaxWires) + " wires, got " +
                     std::to_string(num_wires));
  }
}

SignedPauli SignedPauli::from_string(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  SignedPauli result(text.size());
  for (std::size_t q = 0; q < text.size(); q++) {
    result.set(q, pauli_from_char(text[q]));
  }
  result.negative_ = negative;
  return result;
}

PauliCode SignedPauli::at(std::size_t wire) const {
  if (wire >= num_wires_) {
    throw UsageError("Wire " + std::to_string(wire) + " out of range for a " + std::to_string(num_wires_) +
                     "-wire Pauli");
  }
  return make_pauli_code(xs_[wire], zs_[wire]);
}

void SignedPauli::set(std::size_t wire, PauliCode code) {
  if (wire >= num_wires_) {
    throw UsageError("Wire " + std::to_string(wire) + " out of range for a " + std::to_string(num_wires_) +
                     "-wire Pauli");
  }
  xs_[wire] = has_x(code);
  zs_[wire] = has_z(code);
}

SignedPauli SignedPauli::restricted_to(const WireMask &keep) const {
  SignedPauli result = *this;
  result.xs_ &= keep;
  result.zs_ &= keep;
  return result;
}

std::string SignedPauli::str() const {
  std::string out;
  out.reserve(num_wires_ + 1);
  out.push_back(negative_ ? '-' : '+');
  for (std::size_t q = 0; q < num_wires_; q++) {
    out.push_back(pauli_char(make_pauli_code(xs_[q], zs_[q])));
  }
  return out;
}

bool commutes(const SignedPauli &a, const SignedPauli &b) {
  if (a.num_wires() != b.num_wires()) {
    throw UsageError("Cannot compare Paulis on " + std::to_string(a.num_wires()) + " and " +
                     std::to_string(b.num_wires()) + " wires");
  }
  return (((a.xs() & b.zs()) ^ (a.zs() & b.xs())).count() & 1) == 0;
}

SignedPauli multiply(const SignedPauli &a, const SignedPauli &b) {
  if (!commutes(a, b)) {
    throw UsageError("Product of anticommuting Paulis " + a.str() + " and " + b.str() + " is not Hermitian");
  }
  int phase = pauli_product_phase(a.xs(), a.zs(), b.xs(), b.zs());
  SignedPauli result(a.num_wires());
  for (std::size_t q = 0; q < a.num_wires(); q++) {
    result.set(q, make_pauli_code(a.xs()[q] != b.xs()[q], a.zs()[q] != b.zs()[q]));
  }
  result.set_negative((a.negative() != b.negative()) != (phase == 2));
  return result;
}

SignedPauli random_pauli(std::size_t num_wires, Rng &rng) {
  SignedPauli result(num_wires);
  std::uint64_t bits = 0;
  for (std::size_t q = 0; q < num_wires; q++) {
    if (q % 32 == 0) {
      bits = rng();
    }
    result.set(q, static_cast<PauliCode>(bits & 3));
    bits >>= 2;
  }
  return result;
}

}  // namespace qirb
