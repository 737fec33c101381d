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

#include "qirb/noise.hpp"

#include <string>

#include "qirb/errors.hpp"

namespace qirb {

namespace {

constexpr double kSlack = 1e-12;

void check_probability(double p, const std::string &what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw UsageError(what + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

double OneQubitPauliChannel::probability(PauliCode p) const {
  switch (p) {
    case PauliCode::X:
      return px;
    case PauliCode::Y:
      return py;
    case PauliCode::Z:
      return pz;
    default:
      return 1.0 - total();
  }
}

void OneQubitPauliChannel::validate() const {
  check_probability(px, "1Q X error probability");
  check_probability(py, "1Q Y error probability");
  check_probability(pz, "1Q Z error probability");
  if (total() > 1.0 + kSlack) {
    throw UsageError("1Q error probabilities sum to more than 1");
  }
}

TwoQubitPauliChannel TwoQubitPauliChannel::depolarizing(double eps) {
  TwoQubitPauliChannel ch;
  for (std::size_t k = 1; k < 16; k++) {
    ch.probs[k] = eps;
  }
  return ch;
}

double TwoQubitPauliChannel::total() const {
  double t = 0.0;
  for (std::size_t k = 1; k < 16; k++) {
    t += probs[k];
  }
  return t;
}

void TwoQubitPauliChannel::validate() const {
  if (probs[0] != 0.0) {
    throw UsageError("2Q channel entry 0 (II) is implied and must be zero");
  }
  for (std::size_t k = 1; k < 16; k++) {
    check_probability(probs[k], "2Q error probability");
  }
  if (total() > 1.0 + kSlack) {
    throw UsageError("2Q error probabilities sum to more than 1");
  }
}

double InstrumentTable::total() const {
  double t = 0.0;
  for (const auto &e : entries) {
    t += e.probability;
  }
  return t;
}

void InstrumentTable::validate() const {
  if (num_measured == 0) {
    throw UsageError("Instrument table must describe at least one measured wire");
  }
  for (const auto &e : entries) {
    check_probability(e.probability, "Instrument table probability");
    if (e.pre_flip.size() != num_measured || e.post_flip.size() != num_measured) {
      throw UsageError("Instrument table flip masks must have one entry per measured wire");
    }
    if (e.unmeasured.size() != num_unmeasured) {
      throw UsageError("Instrument table Pauli must have one character per unmeasured wire");
    }
    for (char c : e.unmeasured) {
      pauli_from_char(c);
    }
  }
  if (total() > 1.0 + kSlack) {
    throw UsageError("Instrument table probabilities sum to more than 1");
  }
}

const InstrumentTable *InstrumentNoise::table_for(std::size_t num_measured, std::size_t num_unmeasured) const {
  if (!table) {
    return nullptr;
  }
  if (table->num_measured != num_measured || table->num_unmeasured != num_unmeasured) {
    throw UnsupportedModelError("Instrument table is declared for layers with " + std::to_string(table->num_measured) +
                                " measured and " + std::to_string(table->num_unmeasured) +
                                " unmeasured wires, but a layer has " + std::to_string(num_measured) + " and " +
                                std::to_string(num_unmeasured));
  }
  return &*table;
}

void InstrumentNoise::validate() const {
  check_probability(pre_flip, "MCM pre-readout flip");
  check_probability(post_flip, "MCM post-readout flip");
  check_probability(unmeasured_depolarizing, "Unmeasured-wire depolarizing rate");
  if (3.0 * unmeasured_depolarizing > 1.0 + kSlack) {
    throw UsageError("Unmeasured-wire depolarizing rate exceeds 1/3");
  }
  if (table) {
    table->validate();
  }
}

bool NoiseModel::is_noiseless() const {
  return oneq.total() == 0.0 && twoq.total() == 0.0 && mcm.pre_flip == 0.0 && mcm.post_flip == 0.0 &&
         mcm.unmeasured_depolarizing == 0.0 && (!mcm.table || mcm.table->total() == 0.0) && readout_flip() == 0.0;
}

void NoiseModel::validate() const {
  oneq.validate();
  twoq.validate();
  mcm.validate();
  check_probability(readout_flip(), "Final readout flip");
}

NoiseModel NoiseModel::depolarizing(double f1q, double f2q, double mcm_flip) {
  check_probability(f1q, "1Q fidelity");
  check_probability(f2q, "2Q fidelity");
  NoiseModel model;
  model.oneq = OneQubitPauliChannel::from_fidelity(f1q);
  model.twoq = TwoQubitPauliChannel::from_fidelity(f2q);
  model.mcm.pre_flip = mcm_flip;
  model.mcm.post_flip = mcm_flip;
  model.validate();
  return model;
}

}  // namespace qirb
