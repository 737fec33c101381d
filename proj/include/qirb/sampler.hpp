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
#include <utility>
#include <vector>

#include "qirb/layer.hpp"
#include "qirb/rng.hpp"

namespace qirb {

enum class SamplingMode {
  /// At most one MCM (probability p_mcm) and at most one CNOT (probability
  /// p_cnot) per layer.
  kAtMostOne,
  /// Every wire is measured independently with probability p_mcm; each
  /// remaining wire then starts a CNOT with probability p_cnot if it has a free
  /// neighbour.
  kDensity,
};

using Edge = std::pair<std::size_t, std::size_t>;

struct SamplingConfig {
  std::size_t num_wires = 2;
  double p_cnot = 0.0;
  double p_mcm = 0.0;
  /// Undirected connectivity edges. Empty means all-to-all.
  std::vector<Edge> edges;
  bool reset = true;
  SamplingMode mode = SamplingMode::kAtMostOne;

  void validate() const;
  /// The configured edges, or every pair when `edges` is empty.
  std::vector<Edge> effective_edges() const;
  bool operator==(const SamplingConfig &) const = default;
};

CircuitLayer sample_core_layer(const SamplingConfig &config, Rng &rng);

std::vector<CircuitLayer> sample_core_circuit(const SamplingConfig &config, std::size_t depth, Rng &rng);

}  // namespace qirb
