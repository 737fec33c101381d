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

#include "qirb/simulator.hpp"

#include <string>

#include "qirb/errors.hpp"
#include "qirb/tableau.hpp"

namespace qirb {

namespace {

PauliCode sample_oneq(const OneQubitPauliChannel &ch, double total, Rng &rng) {
  if (total == 0.0) {
    return PauliCode::I;
  }
  double u = uniform01(rng);
  if (u < ch.px) return PauliCode::X;
  if (u < ch.px + ch.py) return PauliCode::Y;
  if (u < total) return PauliCode::Z;
  return PauliCode::I;
}

std::size_t sample_twoq(const TwoQubitPauliChannel &ch, double total, Rng &rng) {
  if (total == 0.0) {
    return 0;
  }
  double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t k = 1; k < 16; k++) {
    acc += ch.probs[k];
    if (u < acc) {
      return k;
    }
  }
  return 0;
}

class ShotRunner {
 public:
  ShotRunner(const QirbCircuit &circuit, const NoiseModel &noise, Rng &rng, ResetFreeMode mode)
      : circuit_(circuit),
        noise_(noise),
        rng_(rng),
        mode_(mode),
        tableau_(circuit.num_wires),
        oneq_total_(noise.oneq.total()),
        twoq_total_(noise.twoq.total()) {}

  ShotRecord run() {
    ShotRecord rec;
    rec.outcome.reserve(circuit_.num_outcome_bits());
    apply_gates(circuit_.prep);
    for (const DressedLayer &dl : circuit_.dressed) {
      apply_gates(dl.l1);
      apply_gates(dl.l2);
      if (!dl.l2.mcm_wires.empty()) {
        run_instrument(dl.l2, rec.outcome);
      }
      apply_gates(dl.l3);
    }
    apply_gates(circuit_.final_layer);
    const double readout = noise_.readout_flip();
    for (std::size_t q = 0; q < circuit_.num_wires; q++) {
      bool bit = tableau_.measure_z(q, rng_);
      if (readout > 0.0 && bernoulli(rng_, readout)) {
        bit = !bit;
      }
      rec.outcome.push_back(bit);
    }
    bool flip = false;
    if (!circuit_.reset && mode_ == ResetFreeMode::kFrameCorrection) {
      flip = resolve_reset_free(circuit_, rec.outcome, mode_).flip;
    }
    rec.success = classify_outcome(circuit_, rec.outcome, flip);
    return rec;
  }

 private:
  void apply_gates(const CircuitLayer &layer) {
    for (const Gate &g : layer.gates) {
      if (g.is_cnot()) {
        tableau_.apply_cnot(g.wire, g.target);
        std::size_t err = sample_twoq(noise_.twoq, twoq_total_, rng_);
        if (err != 0) {
          tableau_.apply_pauli(static_cast<PauliCode>(err & 3), g.wire);
          tableau_.apply_pauli(static_cast<PauliCode>(err >> 2), g.target);
        }
      } else {
        tableau_.apply(g.clifford, g.wire);
        PauliCode err = sample_oneq(noise_.oneq, oneq_total_, rng_);
        if (err != PauliCode::I) {
          tableau_.apply_pauli(err, g.wire);
        }
      }
    }
  }

  void run_instrument(const CircuitLayer &layer, OutcomeString &outcome) {
    const std::size_t k = layer.mcm_wires.size();
    const std::size_t n = circuit_.num_wires;
    const WireMask measured = layer.measured_mask();
    std::vector<std::size_t> unmeasured;
    for (std::size_t q = 0; q < n; q++) {
      if (!measured[q]) {
        unmeasured.push_back(q);
      }
    }

    std::vector<std::uint8_t> pre(k, 0), post(k, 0);
    std::vector<PauliCode> spectator(unmeasured.size(), PauliCode::I);
    if (const InstrumentTable *table = noise_.mcm.table_for(k, unmeasured.size())) {
      double u = uniform01(rng_);
      double acc = 0.0;
      for (const InstrumentTableEntry &e : table->entries) {
        acc += e.probability;
        if (u < acc) {
          pre = e.pre_flip;
          post = e.post_flip;
          for (std::size_t j = 0; j < unmeasured.size(); j++) {
            spectator[j] = pauli_from_char(e.unmeasured[j]);
          }
          break;
        }
      }
    } else {
      const InstrumentNoise &mcm = noise_.mcm;
      for (std::size_t j = 0; j < k; j++) {
        pre[j] = mcm.pre_flip > 0.0 && bernoulli(rng_, mcm.pre_flip);
        post[j] = mcm.post_flip > 0.0 && bernoulli(rng_, mcm.post_flip);
      }
      if (mcm.unmeasured_depolarizing > 0.0) {
        auto channel = OneQubitPauliChannel::depolarizing(mcm.unmeasured_depolarizing);
        for (auto &s : spectator) {
          s = sample_oneq(channel, channel.total(), rng_);
        }
      }
    }

    for (std::size_t j = 0; j < k; j++) {
      std::size_t w = layer.mcm_wires[j];
      if (pre[j]) {
        tableau_.apply_x(w);
      }
      bool bit = tableau_.measure_z(w, rng_);
      outcome.push_back(bit);
      if (bit && (circuit_.reset || mode_ == ResetFreeMode::kFeedforwardX)) {
        tableau_.apply_x(w);
      }
      if (post[j]) {
        tableau_.apply_x(w);
      }
    }
    for (std::size_t j = 0; j < unmeasured.size(); j++) {
      if (spectator[j] != PauliCode::I) {
        tableau_.apply_pauli(spectator[j], unmeasured[j]);
      }
    }
  }

  const QirbCircuit &circuit_;
  const NoiseModel &noise_;
  Rng &rng_;
  ResetFreeMode mode_;
  Tableau tableau_;
  double oneq_total_;
  double twoq_total_;
};

}  // namespace

std::size_t resolve_thread_count(std::size_t requested) {
  if (requested != 0) {
    return requested;
  }
  std::size_t hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

ShotRecord simulate_shot(const QirbCircuit &circuit, const NoiseModel &noise, Rng &rng, ResetFreeMode mode) {
  return ShotRunner(circuit, noise, rng, mode).run();
}

std::vector<ShotRecord> simulate_shots(const QirbCircuit &circuit, const NoiseModel &noise, std::size_t shots,
                                       std::uint64_t seed, const SimulationOptions &options) {
  if (shots == 0) {
    throw UsageError("Shot count must be positive");
  }
  noise.validate();
  std::vector<ShotRecord> records(shots);
  parallel_for(shots, options.threads, [&](std::size_t k) {
    Rng rng(derive_seed(seed, k));
    records[k] = simulate_shot(circuit, noise, rng, options.reset_free_mode);
  });
  return records;
}

}  // namespace qirb
