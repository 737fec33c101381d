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

#include "qirb/theory.hpp"

#include <cmath>
#include <map>
#include <string>

#include "qirb/errors.hpp"

namespace qirb {

namespace {

double binomial_coefficient(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; i++) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

/// Probability that a one-qubit error anticommutes with `tracked`.
double oneq_flip(const OneQubitPauliChannel &ch, PauliCode tracked) {
  double q = 0.0;
  for (PauliCode e : {PauliCode::X, PauliCode::Y, PauliCode::Z}) {
    if (anticommute(e, tracked)) {
      q += ch.probability(e);
    }
  }
  return q;
}

double twoq_flip(const TwoQubitPauliChannel &ch, PauliCode control, PauliCode target) {
  double q = 0.0;
  for (std::size_t k = 1; k < 16; k++) {
    bool odd = anticommute(static_cast<PauliCode>(k & 3), control) != anticommute(static_cast<PauliCode>(k >> 2), target);
    if (odd) {
      q += ch.probs[k];
    }
  }
  return q;
}

std::size_t popcount(const std::vector<std::uint8_t> &bits) {
  std::size_t w = 0;
  for (auto b : bits) {
    w += b != 0;
  }
  return w;
}

bool is_identity_string(const std::string &paulis) {
  for (char c : paulis) {
    if (pauli_from_char(c) != PauliCode::I) {
      return false;
    }
  }
  return true;
}

class ExpectationWalker {
 public:
  ExpectationWalker(const QirbCircuit &circuit, const NoiseModel &noise) : circuit_(circuit), noise_(noise) {}

  double run() {
    const std::size_t n = circuit_.num_wires;
    SignedPauli tracked = circuit_.initial;
    gate_errors(circuit_.prep, tracked);
    const WireMask all = wire_range_mask(n);
    for (const DressedLayer &dl : circuit_.dressed) {
      tracked = conjugate(dl.l1, tracked);
      gate_errors(dl.l1, tracked);
      const WireMask measured = dl.l2.measured_mask();
      SignedPauli pre = tracked.restricted_to(measured);
      tracked = conjugate(dl.l2, tracked.restricted_to(all & ~measured));
      gate_errors(dl.l2, tracked);
      if (!dl.l2.mcm_wires.empty()) {
        instrument_errors(dl, pre, tracked);
      }
      for (std::size_t w : dl.l2.mcm_wires) {
        tracked.set(w, dl.post_meas_component.at(w) == PauliCode::I ? PauliCode::I : PauliCode::Z);
      }
      tracked = conjugate(dl.l3, tracked);
      gate_errors(dl.l3, tracked);
    }
    tracked = conjugate(circuit_.final_layer, tracked);
    gate_errors(circuit_.final_layer, tracked);
    const double readout = noise_.readout_flip();
    for (std::size_t q = 0; q < n; q++) {
      if (tracked.at(q) == PauliCode::Z) {
        location(readout);
      }
    }
    return product_;
  }

 private:
  void location(double q) {
    product_ *= 1.0 - 2.0 * q;
  }

  void gate_errors(const CircuitLayer &layer, const SignedPauli &after) {
    for (const Gate &g : layer.gates) {
      if (g.is_cnot()) {
        location(twoq_flip(noise_.twoq, after.at(g.wire), after.at(g.target)));
      } else {
        location(oneq_flip(noise_.oneq, after.at(g.wire)));
      }
    }
  }

  void instrument_errors(const DressedLayer &dl, const SignedPauli &pre, const SignedPauli &after_gates) {
    const std::size_t n = circuit_.num_wires;
    const WireMask measured = dl.l2.measured_mask();
    std::vector<std::size_t> unmeasured;
    for (std::size_t q = 0; q < n; q++) {
      if (!measured[q]) {
        unmeasured.push_back(q);
      }
    }
    const auto &wires = dl.l2.mcm_wires;
    if (const InstrumentTable *table = noise_.mcm.table_for(wires.size(), unmeasured.size())) {
      double q = 0.0;
      for (const InstrumentTableEntry &e : table->entries) {
        bool odd = false;
        for (std::size_t j = 0; j < wires.size(); j++) {
          odd ^= e.pre_flip[j] && pre.at(wires[j]) == PauliCode::Z;
          odd ^= e.post_flip[j] && dl.post_meas_component.at(wires[j]) != PauliCode::I;
        }
        for (std::size_t j = 0; j < unmeasured.size(); j++) {
          odd ^= anticommute(pauli_from_char(e.unmeasured[j]), after_gates.at(unmeasured[j]));
        }
        if (odd) {
          q += e.probability;
        }
      }
      location(q);
      return;
    }
    const InstrumentNoise &mcm = noise_.mcm;
    for (std::size_t w : wires) {
      if (pre.at(w) == PauliCode::Z) {
        location(mcm.pre_flip);
      }
      if (dl.post_meas_component.at(w) != PauliCode::I) {
        location(mcm.post_flip);
      }
    }
    auto spectator = OneQubitPauliChannel::depolarizing(mcm.unmeasured_depolarizing);
    for (std::size_t q : unmeasured) {
      location(oneq_flip(spectator, after_gates.at(q)));
    }
  }

  const QirbCircuit &circuit_;
  const NoiseModel &noise_;
  double product_ = 1.0;
};

}  // namespace

double p_anti(std::size_t weight) {
  return 0.5 * (1.0 - std::pow(-0.5, static_cast<double>(weight)));
}

double p_anti_sum(std::size_t weight) {
  double total = 0.0;
  for (std::size_t i = 1; i <= weight; i += 2) {
    total += binomial_coefficient(weight, i) * std::pow(0.75, static_cast<double>(i)) *
             std::pow(0.25, static_cast<double>(weight - i));
  }
  return total;
}

double p_anti_meas(std::size_t km, double eps) {
  double total = 0.0;
  for (std::size_t w = 1; w <= km; w++) {
    total += binomial_coefficient(km, w) * std::pow(eps, static_cast<double>(w)) *
             std::pow(1.0 - eps, static_cast<double>(km - w)) * p_anti_sum(w);
  }
  return total;
}

double mcm_effective_fidelity(std::size_t km, double eps) {
  return 1.0 - 2.0 * p_anti_meas(km, eps);
}

double bound_term(std::size_t pre_weight, std::size_t post_weight) {
  double pa = p_anti(pre_weight);
  double pb = p_anti(post_weight);
  return pa + pb - 2.0 * pa * pb;
}

double lambda_contribution(const InstrumentError &error, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw UsageError("Error probability must lie in [0, 1], got " + std::to_string(p));
  }
  if (!error.gate_part_identity) {
    return p;
  }
  return 2.0 * bound_term(error.pre_weight, error.post_weight) * p;
}

BoundExtrema bound_terms_extrema(std::size_t cap) {
  BoundExtrema out;
  out.min = 1.0;
  out.max = 0.0;
  constexpr double kTie = 1e-15;
  for (std::size_t a = 0; a <= cap; a++) {
    for (std::size_t b = 0; b <= cap; b++) {
      if (a == 0 && b == 0) {
        continue;
      }
      double v = bound_term(a, b);
      if (v < out.min - kTie) {
        out.min = v;
        out.min_witnesses.clear();
      }
      if (std::abs(v - out.min) <= kTie) {
        out.min_witnesses.emplace_back(a, b);
      }
      if (v > out.max + kTie) {
        out.max = v;
        out.max_witnesses.clear();
      }
      if (std::abs(v - out.max) <= kTie) {
        out.max_witnesses.emplace_back(a, b);
      }
    }
  }
  return out;
}

LayerCounts dressed_layer_counts(const CircuitLayer &core) {
  return LayerCounts{2 * core.num_wires + core.num_single(), core.num_cnot(), core.num_mcm()};
}

std::vector<LayerCounts> circuit_layer_counts(const QirbCircuit &circuit) {
  std::vector<LayerCounts> out;
  out.push_back({circuit.prep.num_single(), circuit.prep.num_cnot(), 0});
  for (const DressedLayer &dl : circuit.dressed) {
    out.push_back({dl.l1.num_single() + dl.l2.num_single() + dl.l3.num_single(), dl.l2.num_cnot(), dl.l2.num_mcm()});
  }
  out.push_back({circuit.final_layer.num_single(), circuit.final_layer.num_cnot(), 0});
  return out;
}

double layer_p_trans(const LayerCounts &counts, std::size_t num_wires, const NoiseModel &noise) {
  double survival = std::pow(noise.oneq.fidelity(), static_cast<double>(counts.k1)) *
                    std::pow(noise.twoq.fidelity(), static_cast<double>(counts.k2));
  if (counts.km > 0) {
    const std::size_t u = num_wires - counts.km;
    if (const InstrumentTable *table = noise.mcm.table_for(counts.km, u)) {
      double m = 1.0 - table->total();
      for (const auto &e : table->entries) {
        if (is_identity_string(e.unmeasured)) {
          m += e.probability * (1.0 - 2.0 * p_anti(popcount(e.pre_flip))) * (1.0 - 2.0 * p_anti(popcount(e.post_flip)));
        }
      }
      survival *= m;
    } else {
      survival *= mcm_effective_fidelity(counts.km, noise.mcm.pre_flip) *
                  mcm_effective_fidelity(counts.km, noise.mcm.post_flip) *
                  std::pow(1.0 - 3.0 * noise.mcm.unmeasured_depolarizing, static_cast<double>(u));
    }
  }
  return 0.5 * (1.0 - survival);
}

double layer_no_error_probability(const LayerCounts &counts, std::size_t num_wires, const NoiseModel &noise) {
  double p = std::pow(noise.oneq.fidelity(), static_cast<double>(counts.k1)) *
             std::pow(noise.twoq.fidelity(), static_cast<double>(counts.k2));
  if (counts.km > 0) {
    const std::size_t u = num_wires - counts.km;
    if (const InstrumentTable *table = noise.mcm.table_for(counts.km, u)) {
      p *= 1.0 - table->total();
    } else {
      const auto &mcm = noise.mcm;
      p *= std::pow((1.0 - mcm.pre_flip) * (1.0 - mcm.post_flip), static_cast<double>(counts.km)) *
           std::pow(1.0 - 3.0 * mcm.unmeasured_depolarizing, static_cast<double>(u));
    }
  }
  return p;
}

std::vector<LayerClass> enumerate_layer_classes(const SamplingConfig &config) {
  config.validate();
  if (config.mode != SamplingMode::kAtMostOne) {
    throw UsageError("Layer classes can only be enumerated exactly for at-most-one sampling");
  }
  const std::size_t n = config.num_wires;
  const std::vector<Edge> edges = config.effective_edges();
  std::map<LayerCounts, double> classes;
  auto add = [&](std::size_t km, std::size_t k2, double prob) {
    if (prob <= 0.0) {
      return;
    }
    classes[LayerCounts{2 * n + (n - km - 2 * k2), k2, km}] += prob;
  };
  const double pc = config.p_cnot;
  const double pm = config.p_mcm;
  double cnot_possible = edges.empty() ? 0.0 : pc;
  add(0, 1, (1.0 - pm) * cnot_possible);
  add(0, 0, (1.0 - pm) * (1.0 - cnot_possible));
  for (std::size_t w = 0; w < n; w++) {
    bool free_edge = false;
    for (const Edge &e : edges) {
      free_edge = free_edge || (e.first != w && e.second != w);
    }
    double pcw = free_edge ? pc : 0.0;
    add(1, 1, pm / static_cast<double>(n) * pcw);
    add(1, 0, pm / static_cast<double>(n) * (1.0 - pcw));
  }
  std::vector<LayerClass> out;
  for (const auto &[counts, prob] : classes) {
    out.push_back(LayerClass{counts, prob, 0.0});
  }
  return out;
}

TheoryPrediction predict_r_omega(const NoiseModel &noise, const SamplingConfig &config,
                                 const PredictOptions &options) {
  noise.validate();
  config.validate();
  const std::size_t n = config.num_wires;
  TheoryPrediction pred;
  double no_error = 0.0;
  if (config.mode == SamplingMode::kAtMostOne) {
    pred.classes = enumerate_layer_classes(config);
    pred.method = noise.mcm.table ? "lambda-sum" : "closed-form";
    for (LayerClass &c : pred.classes) {
      c.p_trans = layer_p_trans(c.counts, n, noise);
      pred.r_omega += c.probability * 2.0 * c.p_trans;
      no_error += c.probability * layer_no_error_probability(c.counts, n, noise);
    }
  } else {
    pred.method = "monte-carlo";
    pred.warnings.push_back("Density-mode layer distribution estimated from " +
                            std::to_string(options.monte_carlo_layers) + " sampled layers");
    Rng rng(options.seed);
    std::map<LayerCounts, std::size_t> tally;
    for (std::size_t s = 0; s < options.monte_carlo_layers; s++) {
      tally[dressed_layer_counts(sample_core_layer(config, rng))]++;
    }
    double sum_sq = 0.0;
    const double total = static_cast<double>(options.monte_carlo_layers);
    for (const auto &[counts, hits] : tally) {
      LayerClass c{counts, static_cast<double>(hits) / total, layer_p_trans(counts, n, noise)};
      pred.r_omega += c.probability * 2.0 * c.p_trans;
      sum_sq += c.probability * 4.0 * c.p_trans * c.p_trans;
      no_error += c.probability * layer_no_error_probability(counts, n, noise);
      pred.classes.push_back(c);
    }
    double variance = std::max(0.0, sum_sq - pred.r_omega * pred.r_omega);
    pred.r_omega_stderr = std::sqrt(variance / total);
  }
  pred.eps_omega = 1.0 - no_error;
  pred.lower_bound = 0.75 * pred.eps_omega;
  pred.upper_bound = 1.5 * pred.eps_omega;
  return pred;
}

LayerErrorModel layer_error_model(const LayerCounts &counts, std::size_t num_wires, const NoiseModel &noise) {
  LayerErrorModel model;
  const double gates_clean = std::pow(noise.oneq.fidelity(), static_cast<double>(counts.k1)) *
                             std::pow(noise.twoq.fidelity(), static_cast<double>(counts.k2));
  double instrument_dirty_p = 0.0;
  if (counts.km > 0) {
    const std::size_t u = num_wires - counts.km;
    if (const InstrumentTable *table = noise.mcm.table_for(counts.km, u)) {
      for (const auto &e : table->entries) {
        InstrumentError err{popcount(e.pre_flip), is_identity_string(e.unmeasured), popcount(e.post_flip)};
        model.errors.emplace_back(err, gates_clean * e.probability);
      }
    } else {
      const auto &mcm = noise.mcm;
      const std::size_t km = counts.km;
      const double spectator_clean = std::pow(1.0 - 3.0 * mcm.unmeasured_depolarizing, static_cast<double>(u));
      // Enumerate every pre/post flip pattern, grouped by weight.
      for (std::size_t wa = 0; wa <= km; wa++) {
        for (std::size_t wb = 0; wb <= km; wb++) {
          double p_ab = binomial_coefficient(km, wa) * std::pow(mcm.pre_flip, static_cast<double>(wa)) *
                        std::pow(1.0 - mcm.pre_flip, static_cast<double>(km - wa)) * binomial_coefficient(km, wb) *
                        std::pow(mcm.post_flip, static_cast<double>(wb)) *
                        std::pow(1.0 - mcm.post_flip, static_cast<double>(km - wb));
          if (wa != 0 || wb != 0) {
            model.errors.emplace_back(InstrumentError{wa, true, wb}, gates_clean * spectator_clean * p_ab);
          }
          instrument_dirty_p += gates_clean * (1.0 - spectator_clean) * p_ab;
        }
      }
    }
  }
  // Any gate error (or a spectator error) is a non-identity P regardless of a and b.
  double gate_dirty = (1.0 - gates_clean) + instrument_dirty_p;
  if (gate_dirty > 0.0) {
    model.errors.emplace_back(InstrumentError{0, false, 0}, gate_dirty);
  }
  return model;
}

std::pair<double, double> lambda_r_and_eps(std::span<const LayerErrorModel> layers) {
  double r = 0.0;
  double eps = 0.0;
  for (const LayerErrorModel &layer : layers) {
    for (const auto &[err, p] : layer.errors) {
      r += layer.weight * lambda_contribution(err, p);
      eps += layer.weight * p;
    }
  }
  return {r, eps};
}

double r_omega_lambda_sum(const NoiseModel &noise, const SamplingConfig &config) {
  std::vector<LayerErrorModel> layers;
  for (const LayerClass &c : enumerate_layer_classes(config)) {
    LayerErrorModel m = layer_error_model(c.counts, config.num_wires, noise);
    m.weight = c.probability;
    layers.push_back(std::move(m));
  }
  return lambda_r_and_eps(layers).first;
}

double exact_success_expectation(const QirbCircuit &circuit, const NoiseModel &noise) {
  noise.validate();
  return ExpectationWalker(circuit, noise).run();
}

std::vector<double> predict_fbar_curve(double amplitude, double p_trans, std::span<const std::size_t> depths) {
  if (!(p_trans >= 0.0 && p_trans <= 0.5)) {
    throw UsageError("p_trans must lie in [0, 1/2], got " + std::to_string(p_trans));
  }
  std::vector<double> out;
  for (std::size_t d : depths) {
    out.push_back(amplitude * std::pow(1.0 - 2.0 * p_trans, static_cast<double>(d)));
  }
  return out;
}

}  // namespace qirb
