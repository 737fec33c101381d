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

#include "qirb/pipeline.hpp"

#include <string>

#include "qirb/errors.hpp"

namespace qirb {

void ExperimentDesign::validate() const {
  sampling.validate();
  if (circuits_per_depth < 1) {
    throw UsageError("circuits_per_depth must be at least 1");
  }
  if (shots < 1) {
    throw UsageError("shots must be at least 1");
  }
  if (depths.empty()) {
    throw UsageError("At least one depth is required");
  }
  for (std::size_t i = 1; i < depths.size(); i++) {
    if (depths[i] <= depths[i - 1]) {
      throw UsageError("Depths must be sorted and unique");
    }
  }
}

std::vector<DesignedCircuit> generate_circuits(const ExperimentDesign &design) {
  design.validate();
  std::vector<DesignedCircuit> out;
  std::size_t id = 0;
  for (std::size_t depth : design.depths) {
    for (std::size_t k = 0; k < design.circuits_per_depth; k++, id++) {
      Rng rng(derive_seed(design.seed, id));
      std::vector<CircuitLayer> core = sample_core_circuit(design.sampling, depth, rng);
      out.push_back(DesignedCircuit{
          id, depth, build_qirb_circuit(design.sampling.num_wires, core, design.sampling.reset, rng)});
    }
  }
  return out;
}

std::uint64_t default_simulation_seed(const ExperimentDesign &design) {
  return derive_seed(design.seed, 0x5EED5EED5EEDULL);
}

ResultsData run_simulation(const ExperimentDesign &design, std::span<const DesignedCircuit> circuits,
                           const NoiseModel &noise, const SimulationOptions &options, std::uint64_t seed) {
  noise.validate();
  ResultsData results;
  results.design = design;
  results.noise = noise;
  results.reset_free_mode = options.reset_free_mode;
  results.simulation_seed = seed;
  results.circuits.resize(circuits.size());
  SimulationOptions per_circuit = options;
  per_circuit.threads = 1;
  parallel_for(circuits.size(), options.threads, [&](std::size_t i) {
    const DesignedCircuit &dc = circuits[i];
    CircuitResult &res = results.circuits[i];
    res.id = dc.id;
    res.depth = dc.depth;
    res.circuit = dc.circuit;
    for (const ShotRecord &shot : simulate_shots(dc.circuit, noise, design.shots, derive_seed(seed, dc.id), per_circuit)) {
      std::string bits;
      bits.reserve(shot.outcome.size());
      for (auto b : shot.outcome) {
        bits.push_back(b ? '1' : '0');
      }
      res.counts[bits]++;
      (shot.success > 0 ? res.successes : res.failures)++;
    }
  });
  return results;
}

std::vector<CircuitTally> result_tallies(const ResultsData &results) {
  std::vector<CircuitTally> out;
  for (const CircuitResult &c : results.circuits) {
    out.push_back(CircuitTally{c.depth, c.successes, c.failures});
  }
  return out;
}

AnalysisReport analyze_results(std::span<const ResultsData> results, std::span<const std::string> sources,
                               const AnalysisOptions &options) {
  if (results.empty()) {
    throw UsageError("Nothing to analyze");
  }
  AnalysisReport report;
  std::vector<ErmObservation> observations;
  for (std::size_t i = 0; i < results.size(); i++) {
    const ResultsData &data = results[i];
    DatasetAnalysis ds;
    ds.source = i < sources.size() ? sources[i] : "dataset " + std::to_string(i);
    ds.sampling = data.design.sampling;
    std::vector<CircuitTally> tallies = result_tallies(data);
    ds.depths = depth_stats(tallies);
    ds.fit = fit_decay(ds.depths);
    if (options.bootstrap > 0) {
      bootstrap_decay(ds.fit, tallies, options.bootstrap, derive_seed(options.seed, i), options.threads);
    }
    report.datasets.push_back(std::move(ds));

    for (const CircuitResult &c : data.circuits) {
      ErmObservation obs;
      obs.features = ErmFeatures::from_circuit(c.circuit);
      obs.observed = compute_f(c.successes, c.failures);
      obs.shots = c.successes + c.failures;
      obs.group = (static_cast<std::size_t>(i) << 32) | c.depth;
      observations.push_back(std::move(obs));
    }
  }
  if (options.erm) {
    if (results.size() < 2) {
      report.notes.push_back("ERM fitted to a single configuration; the rates are poorly conditioned");
    }
    ErmFitOptions erm_options;
    erm_options.starts = options.erm_starts;
    erm_options.seed = derive_seed(options.seed, 0xE53ULL);
    erm_options.bootstrap = options.erm_bootstrap;
    erm_options.threads = options.threads;
    report.erm = fit_erm(observations, erm_options);
    if (!report.erm->converged) {
      report.notes.push_back("ERM fit did not converge: " + report.erm->diagnostics);
    }
  }
  return report;
}

}  // namespace qirb
