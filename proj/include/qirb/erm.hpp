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
#include <vector>

#include "qirb/builder.hpp"
#include "qirb/theory.hpp"

namespace qirb {

/// Error-rate model. eps_spam is a multiplicative retention factor (close to 1
/// for good state preparation and readout), not an error probability.
struct ErmParams {
  double eps_1q = 0.0;
  double eps_2q = 0.0;
  double eps_mcm = 0.0;
  double eps_spam = 1.0;

  /// Upper limit of eps_mcm: beyond it the effective MCM fidelity is negative.
  static constexpr double kMaxEpsMcm = 2.0 / 3.0;

  void validate() const;
  bool operator==(const ErmParams &) const = default;
};

/// Gate totals of one circuit over all of its layers.
struct ErmFeatures {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  /// km_histogram[j] is the number of layers with exactly j MCMs.
  std::vector<std::size_t> km_histogram;

  static ErmFeatures from_circuit(const QirbCircuit &circuit);
};

double erm_predict(const ErmParams &params, const ErmFeatures &features);
double erm_predict(const ErmParams &params, const QirbCircuit &circuit);

struct ErmObservation {
  ErmFeatures features;
  /// Observed success expectation F of the circuit.
  double observed = 0.0;
  std::uint64_t shots = 0;
  /// Circuits sharing a group (for example the same configuration and depth)
  /// are resampled together by the bootstrap.
  std::size_t group = 0;
};

struct ErmFitOptions {
  std::size_t starts = 8;
  std::uint64_t seed = 1;
  std::size_t bootstrap = 0;
  std::size_t threads = 1;
};

struct ErmFit {
  ErmParams params;
  double mse = 0.0;
  bool converged = false;
  std::size_t starts = 0;
  std::string diagnostics;
  /// Bootstrap standard deviations (zero when no bootstrap was requested).
  ErmParams sigma{0.0, 0.0, 0.0, 0.0};
  std::vector<ErmParams> bootstrap;
};

/// Least-squares ERM fit with multi-start simplex search. The first start is
/// a fixed interior point; the rest are drawn from `seed`.
ErmFit fit_erm(std::span<const ErmObservation> data, const ErmFitOptions &options = {});

/// A single simplex run from `start`, for diagnosing start sensitivity.
ErmFit fit_erm_from(std::span<const ErmObservation> data, const ErmParams &start);

}  // namespace qirb
