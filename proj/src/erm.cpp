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

#include "qirb/erm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "qirb/analysis.hpp"
#include "qirb/errors.hpp"
#include "qirb/nelder_mead.hpp"
#include "qirb/simulator.hpp"

namespace qirb {

namespace {

constexpr std::array<double, 4> kLower{0.0, 0.0, 0.0, 0.0};
constexpr std::array<double, 4> kUpper{1.0, 1.0, ErmParams::kMaxEpsMcm, 1.0};

ErmParams from_vector(std::span<const double> x) {
  return ErmParams{x[0], x[1], x[2], x[3]};
}

/// Per-parameter logarithms, so a prediction costs one exp per circuit.
class LogModel {
 public:
  LogModel(const ErmParams &p, std::size_t max_km) {
    zero_ = p.eps_spam <= 0.0 || p.eps_1q >= 1.0 || p.eps_2q >= 1.0;
    if (zero_) {
      return;
    }
    log_spam_ = std::log(p.eps_spam);
    log_1q_ = std::log1p(-p.eps_1q);
    log_2q_ = std::log1p(-p.eps_2q);
    log_mcm_.assign(max_km + 1, 0.0);
    sign_mcm_.assign(max_km + 1, 1);
    for (std::size_t km = 1; km <= max_km; km++) {
      double f = mcm_effective_fidelity(km, p.eps_mcm);
      sign_mcm_[km] = f < 0.0 ? -1 : 1;
      log_mcm_[km] = f == 0.0 ? -HUGE_VAL : std::log(std::abs(f));
    }
  }

  double predict(const ErmFeatures &f) const {
    if (zero_) {
      return 0.0;
    }
    double log_e = log_spam_ + static_cast<double>(f.k1) * log_1q_ + static_cast<double>(f.k2) * log_2q_;
    int sign = 1;
    for (std::size_t km = 1; km < f.km_histogram.size(); km++) {
      if (f.km_histogram[km] > 0) {
        log_e += static_cast<double>(f.km_histogram[km]) * log_mcm_[km];
        if (sign_mcm_[km] < 0 && f.km_histogram[km] % 2 == 1) {
          sign = -sign;
        }
      }
    }
    return sign * std::exp(log_e);
  }

 private:
  bool zero_ = false;
  double log_spam_ = 0.0;
  double log_1q_ = 0.0;
  double log_2q_ = 0.0;
  std::vector<double> log_mcm_;
  std::vector<int> sign_mcm_;
};

std::size_t max_km(std::span<const ErmObservation> data) {
  std::size_t m = 0;
  for (const ErmObservation &obs : data) {
    if (!obs.features.km_histogram.empty()) {
      m = std::max(m, obs.features.km_histogram.size() - 1);
    }
  }
  return m;
}

double mean_squared_error(std::span<const ErmObservation> data, const ErmParams &p) {
  LogModel model(p, max_km(data));
  double total = 0.0;
  for (const ErmObservation &obs : data) {
    double diff = model.predict(obs.features) - obs.observed;
    total += diff * diff;
  }
  return total / static_cast<double>(data.size());
}

ErmFit single_start(std::span<const ErmObservation> data, const ErmParams &start, const NelderMeadOptions &options) {
  auto objective = [&](std::span<const double> x) { return mean_squared_error(data, from_vector(x)); };
  NelderMeadResult r = nelder_mead(objective, {start.eps_1q, start.eps_2q, start.eps_mcm, start.eps_spam}, kLower,
                                   kUpper, options);
  ErmFit fit;
  fit.params = from_vector(r.x);
  fit.mse = r.value;
  fit.converged = r.converged;
  fit.starts = 1;
  return fit;
}

NelderMeadOptions erm_options() {
  NelderMeadOptions options;
  options.initial_step = {0.002, 0.01, 0.02, 0.05};
  options.f_tolerance = 1e-20;
  options.x_tolerance = 1e-10;
  options.max_evaluations = 40000;
  return options;
}

ErmFit multi_start(std::span<const ErmObservation> data, std::size_t starts, std::uint64_t seed) {
  const NelderMeadOptions options = erm_options();
  Rng rng(seed);
  ErmFit best;
  bool have_best = false;
  std::size_t failures = 0;
  for (std::size_t s = 0; s < starts; s++) {
    ErmParams start{0.002, 0.01, 0.02, 0.95};
    if (s > 0) {
      start = ErmParams{0.02 * uniform01(rng), 0.05 * uniform01(rng), 0.2 * uniform01(rng),
                        0.5 + 0.5 * uniform01(rng)};
    }
    ErmFit fit = single_start(data, start, options);
    failures += !fit.converged;
    if (!have_best || fit.mse < best.mse) {
      best = fit;
      have_best = true;
    }
  }
  best.starts = starts;
  if (failures > 0) {
    best.diagnostics = std::to_string(failures) + " of " + std::to_string(starts) +
                       " starts hit the evaluation limit before converging";
  }
  return best;
}

}  // namespace

void ErmParams::validate() const {
  auto check = [](double v, double hi, const char *name) {
    if (!(v >= 0.0 && v <= hi)) {
      throw UsageError(std::string(name) + " must lie in [0, " + std::to_string(hi) + "], got " + std::to_string(v));
    }
  };
  check(eps_1q, 1.0, "eps_1q");
  check(eps_2q, 1.0, "eps_2q");
  check(eps_mcm, kMaxEpsMcm, "eps_mcm");
  check(eps_spam, 1.0, "eps_spam");
}

ErmFeatures ErmFeatures::from_circuit(const QirbCircuit &circuit) {
  ErmFeatures f;
  for (const LayerCounts &c : circuit_layer_counts(circuit)) {
    f.k1 += c.k1;
    f.k2 += c.k2;
    if (f.km_histogram.size() <= c.km) {
      f.km_histogram.resize(c.km + 1, 0);
    }
    f.km_histogram[c.km]++;
  }
  return f;
}

double erm_predict(const ErmParams &p, const ErmFeatures &features) {
  std::size_t km = features.km_histogram.empty() ? 0 : features.km_histogram.size() - 1;
  return LogModel(p, km).predict(features);
}

double erm_predict(const ErmParams &params, const QirbCircuit &circuit) {
  params.validate();
  return erm_predict(params, ErmFeatures::from_circuit(circuit));
}

ErmFit fit_erm_from(std::span<const ErmObservation> data, const ErmParams &start) {
  if (data.empty()) {
    throw FitDegenerateError("ERM fit needs at least one circuit");
  }
  return single_start(data, start, erm_options());
}

ErmFit fit_erm(std::span<const ErmObservation> data, const ErmFitOptions &options) {
  if (data.empty()) {
    throw FitDegenerateError("ERM fit needs at least one circuit");
  }
  if (options.starts < 1) {
    throw UsageError("ERM fit needs at least one start");
  }
  ErmFit fit = multi_start(data, options.starts, options.seed);
  if (!fit.converged) {
    fit.diagnostics = "No start converged; best MSE " + std::to_string(fit.mse) + ". " + fit.diagnostics;
  }
  if (options.bootstrap == 0) {
    return fit;
  }

  std::map<std::size_t, std::vector<const ErmObservation *>> groups;
  for (const ErmObservation &obs : data) {
    groups[obs.group].push_back(&obs);
  }
  std::vector<ErmParams> replicas(options.bootstrap);
  parallel_for(options.bootstrap, options.threads, [&](std::size_t b) {
    Rng rng(derive_seed(options.seed ^ 0xB007B007ULL, b));
    std::vector<ErmObservation> replicate;
    replicate.reserve(data.size());
    for (const auto &[group, members] : groups) {
      for (std::size_t k = 0; k < members.size(); k++) {
        ErmObservation obs = *members[uniform_index(rng, members.size())];
        if (obs.shots > 0) {
          double p = std::clamp(0.5 * (1.0 + obs.observed), 0.0, 1.0);
          std::uint64_t s = binomial(rng, obs.shots, p);
          obs.observed = compute_f(s, obs.shots - s);
        }
        replicate.push_back(std::move(obs));
      }
    }
    replicas[b] = multi_start(replicate, options.starts, derive_seed(options.seed, b)).params;
  });
  fit.bootstrap = replicas;
  auto sigma_of = [&](double ErmParams::*field) {
    std::vector<double> values;
    for (const ErmParams &p : replicas) {
      values.push_back(p.*field);
    }
    return BootstrapSummary::from_samples(std::move(values)).sigma;
  };
  fit.sigma = ErmParams{sigma_of(&ErmParams::eps_1q), sigma_of(&ErmParams::eps_2q), sigma_of(&ErmParams::eps_mcm),
                        sigma_of(&ErmParams::eps_spam)};
  return fit;
}

}  // namespace qirb
