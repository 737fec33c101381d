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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qirb/builder.hpp"
#include "qirb/noise.hpp"
#include "qirb/sampler.hpp"

namespace qirb {

/// Probability that a weight-w X-type error anticommutes with a uniformly
/// random tracked Pauli; closed form (1 - (-1/2)^w) / 2.
double p_anti(std::size_t weight);

/// The same quantity as the literal sum over odd i <= w of C(w,i)(3/4)^i(1/4)^(w-i).
double p_anti_sum(std::size_t weight);

/// Probability that independent flips of rate eps on km measured wires
/// anticommute with the tracked Pauli.
double p_anti_meas(std::size_t km, double eps);

/// Effective fidelity 1 - 2 p_anti_meas(km, eps) of km measured wires.
double mcm_effective_fidelity(std::size_t km, double eps);

struct InstrumentError {
  std::size_t pre_weight = 0;
  bool gate_part_identity = true;
  std::size_t post_weight = 0;
};

/// Contribution of one error with probability p to r_Omega.
double lambda_contribution(const InstrumentError &error, double p);

/// p_anti(a) + p_anti(b) - 2 p_anti(a) p_anti(b).
double bound_term(std::size_t pre_weight, std::size_t post_weight);

struct BoundExtrema {
  double min = 0.0;
  double max = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> min_witnesses;
  std::vector<std::pair<std::size_t, std::size_t>> max_witnesses;
};

/// Brute-force extrema of bound_term over all weight pairs up to `cap`,
/// excluding (0, 0).
BoundExtrema bound_terms_extrema(std::size_t cap = 32);

struct LayerCounts {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::size_t km = 0;
  bool operator==(const LayerCounts &) const = default;
  auto operator<=>(const LayerCounts &) const = default;
};

/// Gate counts of the dressed layer built around `core`: n single-qubit gates
/// in each of l1 and l3 plus the core layer's own operations.
LayerCounts dressed_layer_counts(const CircuitLayer &core);

/// Counts for every layer of `circuit`: preparation, each dressed layer, final.
std::vector<LayerCounts> circuit_layer_counts(const QirbCircuit &circuit);

/// Probability that a dressed layer with these counts flips the success
/// indicator, averaging over the uniformly random tracked Pauli.
double layer_p_trans(const LayerCounts &counts, std::size_t num_wires, const NoiseModel &noise);

/// Probability that a layer with these counts suffers no error at all.
double layer_no_error_probability(const LayerCounts &counts, std::size_t num_wires, const NoiseModel &noise);

struct LayerClass {
  LayerCounts counts;
  double probability = 0.0;
  double p_trans = 0.0;
};

struct TheoryPrediction {
  std::vector<LayerClass> classes;
  double r_omega = 0.0;
  double eps_omega = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  /// "closed-form", "lambda-sum" or "monte-carlo".
  std::string method;
  /// Standard error of r_omega for the Monte Carlo method, else 0.
  double r_omega_stderr = 0.0;
  std::vector<std::string> warnings;
};

/// Exact distribution of dressed-layer counts for at-most-one sampling.
std::vector<LayerClass> enumerate_layer_classes(const SamplingConfig &config);

struct PredictOptions {
  std::size_t monte_carlo_layers = 200000;
  std::uint64_t seed = 0x51ab1e5eedULL;
};

TheoryPrediction predict_r_omega(const NoiseModel &noise, const SamplingConfig &config,
                                 const PredictOptions &options = {});

/// r_Omega by summing lambda contributions over every error of every layer
/// class. Supports instrument tables.
double r_omega_lambda_sum(const NoiseModel &noise, const SamplingConfig &config);

/// Expected value of the +-1 success indicator of one circuit under `noise`,
/// assuming independent error locations.
double exact_success_expectation(const QirbCircuit &circuit, const NoiseModel &noise);

std::vector<double> predict_fbar_curve(double amplitude, double p_trans, std::span<const std::size_t> depths);

/// Error distribution of one layer class: probability `weight` under Omega and
/// every non-trivial error (a, P, b) with its probability.
struct LayerErrorModel {
  double weight = 1.0;
  std::vector<std::pair<InstrumentError, double>> errors;
};

/// Lumps the gate errors of a layer with `counts` together with its MCM errors.
LayerErrorModel layer_error_model(const LayerCounts &counts, std::size_t num_wires, const NoiseModel &noise);

/// r_Omega and eps_Omega of an explicit mixture of layer error models.
std::pair<double, double> lambda_r_and_eps(std::span<const LayerErrorModel> layers);

}  // namespace qirb
