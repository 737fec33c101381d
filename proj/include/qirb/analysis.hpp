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
#include <utility>
#include <vector>

#include "qirb/simulator.hpp"

namespace qirb {

/// Success and failure counts of one circuit.
struct CircuitTally {
  std::size_t depth = 0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;

  std::uint64_t shots() const {
    return successes + failures;
  }
};

/// (successes - failures) / shots.
double compute_f(std::uint64_t successes, std::uint64_t failures);
double compute_f(std::span<const ShotRecord> shots);
CircuitTally tally_shots(std::size_t depth, std::span<const ShotRecord> shots);

struct DepthStats {
  std::size_t depth = 0;
  std::vector<double> circuit_f;
  double mean = 0.0;
  /// Standard error of the mean over circuits (0 with a single circuit).
  double stderr_mean = 0.0;

  static DepthStats from_values(std::size_t depth, std::vector<double> values);
};

/// Groups tallies by depth (ascending) and summarizes each group.
std::vector<DepthStats> depth_stats(std::span<const CircuitTally> tallies);

struct BootstrapSummary {
  std::vector<double> samples;
  double sigma = 0.0;
  /// 15.87th and 84.13th percentiles.
  std::pair<double, double> interval{0.0, 0.0};

  static BootstrapSummary from_samples(std::vector<double> samples);
};

struct FitResult {
  double amplitude = 0.0;
  double r_omega = 0.0;
  /// Weighted sum of squared residuals at the optimum.
  double residual = 0.0;
  bool weighted = false;
  BootstrapSummary r_bootstrap;
  BootstrapSummary amplitude_bootstrap;
};

/// Fits mean F against A (1 - r)^d.
FitResult fit_decay(std::span<const DepthStats> stats);

/// Resamples circuits with replacement within each depth, redraws each
/// circuit's shots from a binomial at its observed success rate, and refits.
/// Fills the bootstrap fields of `fit`.
void bootstrap_decay(FitResult &fit, std::span<const CircuitTally> tallies, std::size_t resamples, std::uint64_t seed,
                     std::size_t threads = 1);

/// One bootstrap replicate of `tallies`, as used by bootstrap_decay.
std::vector<CircuitTally> resample_tallies(std::span<const CircuitTally> tallies, Rng &rng);

}  // namespace qirb
