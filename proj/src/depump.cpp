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

#include "qirb/depump.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qirb/errors.hpp"
#include "qirb/nelder_mead.hpp"
#include "qirb/rng.hpp"

namespace qirb {

double depump_model(double gamma, double t) {
  return (2.0 / 3.0) * (1.0 - std::exp(-3.0 * gamma * t));
}

DepumpFit fit_depumping(std::span<const DepumpSample> samples) {
  if (samples.size() < 2) {
    throw FitDegenerateError("Depumping fit needs at least two samples");
  }
  double t_max = 0.0;
  bool all_zero = true;
  for (const DepumpSample &s : samples) {
    if (!(s.t >= 0.0) || !std::isfinite(s.population)) {
      throw UsageError("Depumping samples need finite populations and t >= 0");
    }
    t_max = std::max(t_max, s.t);
    all_zero = all_zero && s.population == 0.0;
  }
  if (all_zero || t_max == 0.0) {
    return DepumpFit{0.0, 0.0};
  }

  // Seed from inverting the model at each usable point.
  double seed_sum = 0.0;
  std::size_t seed_count = 0;
  for (const DepumpSample &s : samples) {
    if (s.t > 0.0 && s.population > 0.0 && s.population < 2.0 / 3.0) {
      seed_sum += -std::log(1.0 - 1.5 * s.population) / (3.0 * s.t);
      seed_count++;
    }
  }
  double start = seed_count > 0 ? seed_sum / static_cast<double>(seed_count) : 1.0 / t_max;

  auto objective = [&](std::span<const double> x) {
    double total = 0.0;
    for (const DepumpSample &s : samples) {
      double diff = s.population - depump_model(x[0], s.t);
      total += diff * diff;
    }
    return total;
  };
  const std::array<double, 1> lower{0.0};
  const std::array<double, 1> upper{1e3 * std::max(start, 1.0 / t_max)};
  NelderMeadOptions options;
  options.initial_step = {0.25 * std::max(start, 1e-6)};
  options.x_tolerance = 1e-14;
  options.f_tolerance = 1e-24;
  NelderMeadResult r = nelder_mead(objective, {start}, lower, upper, options);
  return DepumpFit{r.x[0], r.value};
}

std::vector<double> bootstrap_depumping(std::span<const DepumpSample> samples, const DepumpFit &fit,
                                        std::uint64_t shots, std::size_t resamples, std::uint64_t seed) {
  if (shots == 0 || resamples < 2) {
    throw UsageError("Depumping bootstrap needs shots >= 1 and at least two resamples");
  }
  std::vector<double> gammas;
  gammas.reserve(resamples);
  for (std::size_t b = 0; b < resamples; b++) {
    Rng rng(derive_seed(seed, b));
    std::vector<DepumpSample> replicate;
    for (const DepumpSample &s : samples) {
      std::uint64_t hits = binomial(rng, shots, depump_model(fit.gamma, s.t));
      replicate.push_back({s.t, static_cast<double>(hits) / static_cast<double>(shots)});
    }
    gammas.push_back(fit_depumping(replicate).gamma);
  }
  return gammas;
}

}  // namespace qirb
