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

#include "qirb/sampler.hpp"

#include <algorithm>
#include <string>

#include "qirb/errors.hpp"

namespace qirb {

namespace {

bool valid_probability(double p) {
  return p >= 0.0 && p <= 1.0;
}

}  // namespace

void SamplingConfig::validate() const {
  if (num_wires == 0 || num_wires > kMaxWires) {
    throw UsageError("Wire count " + std::to_string(num_wires) + " outside [1, " + std::to_string(kMaxWires) + "]");
  }
  if (!valid_probability(p_cnot)) {
    throw UsageError("p_cnot must lie in [0, 1], got " + std::to_string(p_cnot));
  }
  if (!valid_probability(p_mcm)) {
    throw UsageError("p_mcm must lie in [0, 1], got " + std::to_string(p_mcm));
  }
  for (const Edge &e : edges) {
    if (e.first >= num_wires || e.second >= num_wires || e.first == e.second) {
      throw UsageError("Invalid connectivity edge (" + std::to_string(e.first) + ", " + std::to_string(e.second) +
                       ") for " + std::to_string(num_wires) + " wires");
    }
  }
}

std::vector<Edge> SamplingConfig::effective_edges() const {
  if (!edges.empty()) {
    return edges;
  }
  std::vector<Edge> all;
  for (std::size_t a = 0; a < num_wires; a++) {
    for (std::size_t b = a + 1; b < num_wires; b++) {
      all.emplace_back(a, b);
    }
  }
  return all;
}

CircuitLayer sample_core_layer(const SamplingConfig &config, Rng &rng) {
  config.validate();
  const std::size_t n = config.num_wires;
  CircuitLayer layer;
  layer.num_wires = n;
  layer.reset = config.reset;
  WireMask busy;
  const std::vector<Edge> edges = config.effective_edges();

  auto place_cnot = [&](std::size_t a, std::size_t b) {
    if (bernoulli(rng, 0.5)) {
      std::swap(a, b);
    }
    layer.gates.push_back(Gate::cnot(a, b));
    busy.set(a);
    busy.set(b);
  };

  if (config.mode == SamplingMode::kAtMostOne) {
    if (bernoulli(rng, config.p_mcm)) {
      std::size_t w = uniform_index(rng, n);
      layer.mcm_wires.push_back(w);
      busy.set(w);
    }
    if (bernoulli(rng, config.p_cnot)) {
      std::vector<Edge> free_edges;
      for (const Edge &e : edges) {
        if (!busy[e.first] && !busy[e.second]) {
          free_edges.push_back(e);
        }
      }
      if (!free_edges.empty()) {
        const Edge &e = free_edges[uniform_index(rng, free_edges.size())];
        place_cnot(e.first, e.second);
      }
    }
  } else {
    for (std::size_t w = 0; w < n; w++) {
      if (bernoulli(rng, config.p_mcm)) {
        layer.mcm_wires.push_back(w);
        busy.set(w);
      }
    }
    for (std::size_t w = 0; w < n; w++) {
      if (busy[w] || !bernoulli(rng, config.p_cnot)) {
        continue;
      }
      std::vector<std::size_t> partners;
      for (const Edge &e : edges) {
        if (e.first == w && !busy[e.second]) {
          partners.push_back(e.second);
        } else if (e.second == w && !busy[e.first]) {
          partners.push_back(e.first);
        }
      }
      if (!partners.empty()) {
        place_cnot(w, partners[uniform_index(rng, partners.size())]);
      }
    }
  }

  std::vector<Gate> singles;
  for (std::size_t w = 0; w < n; w++) {
    if (!busy[w]) {
      singles.push_back(Gate::single(SingleQubitClifford::from_index(uniform_index(rng, kNumSingleQubitCliffords)), w));
    }
  }
  layer.gates.insert(layer.gates.begin(), singles.begin(), singles.end());
  return layer;
}

std::vector<CircuitLayer> sample_core_circuit(const SamplingConfig &config, std::size_t depth, Rng &rng) {
  std::vector<CircuitLayer> layers;
  layers.reserve(depth);
  for (std::size_t i = 0; i < depth; i++) {
    layers.push_back(sample_core_layer(config, rng));
  }
  return layers;
}

}  // namespace qirb
