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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qirb/analysis.hpp"
#include "qirb/builder.hpp"
#include "qirb/erm.hpp"
#include "qirb/noise.hpp"
#include "qirb/sampler.hpp"
#include "qirb/simulator.hpp"

namespace qirb {

struct ExperimentDesign {
  std::vector<std::size_t> depths{0, 1, 4, 32, 128};
  std::size_t circuits_per_depth = 15;
  std::size_t shots = 100;
  /// Wire count, probabilities, connectivity and reset behaviour.
  SamplingConfig sampling;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const ExperimentDesign &) const = default;
};

struct DesignedCircuit {
  std::size_t id = 0;
  std::size_t depth = 0;
  QirbCircuit circuit;
  bool operator==(const DesignedCircuit &) const = default;
};

/// Circuit `id` is built from an rng seeded with derive_seed(design.seed, id).
std::vector<DesignedCircuit> generate_circuits(const ExperimentDesign &design);

struct CircuitResult {
  std::size_t id = 0;
  std::size_t depth = 0;
  QirbCircuit circuit;
  /// Raw outcome strings ('0'/'1', canonical bit order) and their counts.
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  bool operator==(const CircuitResult &) const = default;
};

struct ResultsData {
  ExperimentDesign design;
  NoiseModel noise;
  ResetFreeMode reset_free_mode = ResetFreeMode::kFrameCorrection;
  std::uint64_t simulation_seed = 0;
  std::vector<CircuitResult> circuits;
  bool operator==(const ResultsData &) const = default;
};

/// Default simulation seed for a design, so a full run is fixed by the design seed.
std::uint64_t default_simulation_seed(const ExperimentDesign &design);

/// Circuit `id` uses shot seeds derived from derive_seed(seed, id).
ResultsData run_simulation(const ExperimentDesign &design, std::span<const DesignedCircuit> circuits,
                           const NoiseModel &noise, const SimulationOptions &options, std::uint64_t seed);

std::vector<CircuitTally> result_tallies(const ResultsData &results);

struct AnalysisOptions {
  std::size_t bootstrap = 100;
  std::size_t erm_bootstrap = 30;
  std::size_t erm_starts = 8;
  bool erm = true;
  std::uint64_t seed = 2024;
  std::size_t threads = 1;
};

struct DatasetAnalysis {
  std::string source;
  SamplingConfig sampling;
  std::vector<DepthStats> depths;
  FitResult fit;
};

struct AnalysisReport {
  std::vector<DatasetAnalysis> datasets;
  std::optional<ErmFit> erm;
  std::vector<std::string> notes;
};

/// Fits every dataset's decay (with bootstrap) and, if requested, one ERM
/// across all datasets. Throws FitDegenerateError if a decay fit is impossible.
AnalysisReport analyze_results(std::span<const ResultsData> results, std::span<const std::string> sources,
                               const AnalysisOptions &options);

}  // namespace qirb
