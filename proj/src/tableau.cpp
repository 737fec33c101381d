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

#include "qirb/tableau.hpp"

#include <string>

#include "qirb/errors.hpp"

namespace qirb {

Tableau::Tableau(std::size_t num_wires) : n_(num_wires), rows_(2 * num_wires) {
  if (num_wires == 0 || num_wires > kMaxWires) {
    throw UsageError("Tableau wire count " + std::to_string(num_wires) + " outside [1, " +
                     std::to_string(kMaxWires) + "]");
  }
  for (std::size_t q = 0; q < n_; q++) {
    rows_[q].x.set(q);
    rows_[n_ + q].z.set(q);
  }
}

void Tableau::apply(SingleQubitClifford c, std::size_t wire) {
  for (Row &row : rows_) {
    PauliImage img = c.image(make_pauli_code(row.x[wire], row.z[wire]));
    row.x[wire] = has_x(img.code);
    row.z[wire] = has_z(img.code);
    row.negative ^= img.negative;
  }
}

void Tableau::apply_cnot(std::size_t control, std::size_t target) {
  for (Row &row : rows_) {
    bool xc = row.x[control], zc = row.z[control];
    bool xt = row.x[target], zt = row.z[target];
    row.negative ^= xc && zt && (xt == zc);
    row.x[target] = xt != xc;
    row.z[control] = zc != zt;
  }
}

void Tableau::apply_pauli(PauliCode p, std::size_t wire) {
  for (Row &row : rows_) {
    row.negative ^= anticommute(p, make_pauli_code(row.x[wire], row.z[wire]));
  }
}

void Tableau::multiply_into(Row &target, const Row &source) {
  int phase = pauli_product_phase(source.x, source.z, target.x, target.z);
  target.negative = (target.negative != source.negative) != (phase == 2);
  target.x ^= source.x;
  target.z ^= source.z;
}

bool Tableau::is_deterministic_z(std::size_t wire) const {
  for (std::size_t k = n_; k < 2 * n_; k++) {
    if (rows_[k].x[wire]) {
      return false;
    }
  }
  return true;
}

bool Tableau::measure_z(std::size_t wire, Rng &rng) {
  std::size_t pivot = 2 * n_;
  for (std::size_t k = n_; k < 2 * n_; k++) {
    if (rows_[k].x[wire]) {
      pivot = k;
      break;
    }
  }
  if (pivot < 2 * n_) {
    for (std::size_t k = 0; k < 2 * n_; k++) {
      if (k != pivot && rows_[k].x[wire]) {
        multiply_into(rows_[k], rows_[pivot]);
      }
    }
    bool outcome = bernoulli(rng, 0.5);
    rows_[pivot - n_] = rows_[pivot];
    rows_[pivot] = Row{};
    rows_[pivot].z.set(wire);
    rows_[pivot].negative = outcome;
    return outcome;
  }
  Row scratch;
  for (std::size_t q = 0; q < n_; q++) {
    if (rows_[q].x[wire]) {
      multiply_into(scratch, rows_[n_ + q]);
    }
  }
  return scratch.negative;
}

int Tableau::peek_expectation(const SignedPauli &observable) const {
  if (observable.num_wires() != n_) {
    throw UsageError("Observable acts on " + std::to_string(observable.num_wires()) + " wires, state has " +
                     std::to_string(n_));
  }
  auto anticommutes = [&](const Row &row) {
    return (((row.x & observable.zs()) ^ (row.z & observable.xs())).count() & 1) != 0;
  };
  for (std::size_t k = n_; k < 2 * n_; k++) {
    if (anticommutes(rows_[k])) {
      return 0;
    }
  }
  Row scratch;
  for (std::size_t q = 0; q < n_; q++) {
    if (anticommutes(rows_[q])) {
      multiply_into(scratch, rows_[n_ + q]);
    }
  }
  if (scratch.x != observable.xs() || scratch.z != observable.zs()) {
    return 0;
  }
  return scratch.negative == observable.negative() ? 1 : -1;
}

SignedPauli Tableau::stabilizer(std::size_t k) const {
  if (k >= n_) {
    throw UsageError("Stabilizer index out of range");
  }
  const Row &row = rows_[n_ + k];
  SignedPauli p(n_);
  for (std::size_t q = 0; q < n_; q++) {
    p.set(q, make_pauli_code(row.x[q], row.z[q]));
  }
  p.set_negative(row.negative);
  return p;
}

}  // namespace qirb
