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
#include <vector>

namespace qirb {

struct DepumpSample {
  double t = 0.0;
  /// Measured bright-state depumped population at time t.
  double population = 0.0;
};

struct DepumpFit {
  double gamma = 0.0;
  double residual = 0.0;
};

/// (2/3)(1 - exp(-3 gamma t)).
double depump_model(double gamma, double t);

/// Least-squares scattering rate for the depumping model.
DepumpFit fit_depumping(std::span<const DepumpSample> samples);

/// Parametric bootstrap: redraws every population from a binomial with
/// `shots` trials at the fitted model value and refits. Returns the refitted rates.
std::vector<double> bootstrap_depumping(std::span<const DepumpSample> samples, const DepumpFit &fit,
                                        std::uint64_t shots, std::size_t resamples, std::uint64_t seed);

}  // namespace qirb
