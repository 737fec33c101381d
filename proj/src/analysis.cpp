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

#include "qirb/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "qirb/errors.hpp"
#include "qirb/nelder_mead.hpp"

namespace qirb {

namespace {

constexpr double kMaxAmplitude = 1.05;
constexpr double kMaxRate = 1.0 - 1e-12;

double percentile(const std::vector<double> &sorted, double q) {
  if (sorted.empty()) {
    return 0.0;
  }
  double pos = q * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double compute_f(std::uint64_t successes, std::uint64_t failures) {
  const std::uint64_t total = successes + failures;
  if (total == 0) {
    throw UsageError("Cannot compute F from zero shots");
  }
  return (static_cast<double>(successes) - static_cast<double>(failures)) / static_cast<double>(total);
}

CircuitTally tally_shots(std::size_t depth, std::span<const ShotRecord> shots) {
  CircuitTally t{depth, 0, 0};
  for (const ShotRecord &s : shots) {
    (s.success > 0 ? t.successes : t.failures)++;
  }
  return t;
}

double compute_f(std::span<const ShotRecord> shots) {
  CircuitTally t = tally_shots(0, shots);
  return compute_f(t.successes, t.failures);
}

DepthStats DepthStats::from_values(std::size_t depth, std::vector<double> values) {
  if (values.empty()) {
    throw UsageError("Depth " + std::to_string(depth) + " has no circuits");
  }
  DepthStats s;
  s.depth = depth;
  s.circuit_f = std::move(values);
  const double k = static_cast<double>(s.circuit_f.size());
  double sum = 0.0;
  for (double v : s.circuit_f) {
    sum += v;
  }
  s.mean = sum / k;
  if (s.circuit_f.size() > 1) {
    double ss = 0.0;
    for (double v : s.circuit_f) {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.stderr_mean = std::sqrt(ss / (k - 1.0) / k);
  }
  return s;
}

std::vector<DepthStats> depth_stats(std::span<const CircuitTally> tallies) {
  std::map<std::size_t, std::vector<double>> grouped;
  for (const CircuitTally &t : tallies) {
    grouped[t.depth].push_back(compute_f(t.successes, t.failures));
  }
  std::vector<DepthStats> out;
  for (auto &[d, values] : grouped) {
    out.push_back(DepthStats::from_values(d, std::move(values)));
  }
  return out;
}

BootstrapSummary BootstrapSummary::from_samples(std::vector<double> samples) {
  BootstrapSummary s;
  s.samples = std::move(samples);
  const std::size_t b = s.samples.size();
  if (b == 0) {
    return s;
  }
  double mean = 0.0;
  for (double v : s.samples) {
    mean += v;
  }
  mean /= static_cast<double>(b);
  if (b > 1) {
    double ss = 0.0;
    for (double v : s.samples) {
      ss += (v - mean) * (v - mean);
    }
    s.sigma = std::sqrt(ss / static_cast<double>(b - 1));
  }
  std::vector<double> sorted = s.samples;
  std::sort(sorted.begin(), sorted.end());
  s.interval = {percentile(sorted, 0.158655), percentile(sorted, 0.841345)};
  return s;
}

FitResult fit_decay(std::span<const DepthStats> stats) {
  std::vector<const DepthStats *> points;
  for (const DepthStats &s : stats) {
    if (!std::isfinite(s.mean)) {
      throw FitDegenerateError("Depth " + std::to_string(s.depth) + " has a non-finite mean");
    }
    points.push_back(&s);
  }
  std::map<std::size_t, int> distinct;
  bool any_positive = false;
  for (const DepthStats *s : points) {
    distinct[s->depth]++;
    any_positive = any_positive || s->mean > 0.0;
  }
  if (distinct.size() < 2) {
    throw FitDegenerateError("Decay fit needs at least two distinct depths");
  }
  if (!any_positive) {
    throw FitDegenerateError("Decay fit needs at least one depth with positive mean F");
  }

  FitResult fit;
  fit.weighted = std::all_of(points.begin(), points.end(), [](const DepthStats *s) { return s->stderr_mean > 0.0; });
  std::vector<double> weights;
  for (const DepthStats *s : points) {
    weights.push_back(fit.weighted ? 1.0 / (s->stderr_mean * s->stderr_mean) : 1.0);
  }

  // Log-linear seed over the positive means.
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const DepthStats *s : points) {
    if (s->mean <= 0.0) {
      continue;
    }
    double x = static_cast<double>(s->depth), y = std::log(s->mean);
    sw += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = 0.0, intercept = sy / sw;
  double denom = sw * sxx - sx * sx;
  if (sw >= 2 && denom > 0) {
    slope = (sw * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / sw;
  }
  const std::array<double, 2> lower{1e-12, 0.0};
  const std::array<double, 2> upper{kMaxAmplitude, kMaxRate};
  std::vector<double> start{std::clamp(std::exp(intercept), lower[0], upper[0]),
                            std::clamp(1.0 - std::exp(slope), lower[1], 0.5)};

  auto objective = [&](std::span<const double> p) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); i++) {
      double model = p[0] * std::pow(1.0 - p[1], static_cast<double>(points[i]->depth));
      double diff = points[i]->mean - model;
      total += weights[i] * diff * diff;
    }
    return total;
  };
  NelderMeadOptions options;
  options.initial_step = {0.05, std::max(0.01, 0.5 * start[1])};
  NelderMeadResult best = nelder_mead(objective, start, lower, upper, options);
  fit.amplitude = best.x[0];
  fit.r_omega = best.x[1];
  fit.residual = best.value;
  return fit;
}

std::vector<CircuitTally> resample_tallies(std::span<const CircuitTally> tallies, Rng &rng) {
  std::map<std::size_t, std::vector<const CircuitTally *>> grouped;
  for (const CircuitTally &t : tallies) {
    grouped[t.depth].push_back(&t);
  }
  std::vector<CircuitTally> out;
  out.reserve(tallies.size());
  for (const auto &[depth, group] : grouped) {
    for (std::size_t k = 0; k < group.size(); k++) {
      const CircuitTally &pick = *group[uniform_index(rng, group.size())];
      const std::uint64_t n = pick.shots();
      const double p = static_cast<double>(pick.successes) / static_cast<double>(n);
      std::uint64_t s = binomial(rng, n, p);
      out.push_back(CircuitTally{depth, s, n - s});
    }
  }
  return out;
}

void bootstrap_decay(FitResult &fit, std::span<const CircuitTally> tallies, std::size_t resamples, std::uint64_t seed,
                     std::size_t threads) {
  if (resamples < 2) {
    throw UsageError("Bootstrap needs at least two resamples");
  }
  std::vector<double> rates(resamples), amplitudes(resamples);
  std::vector<std::uint8_t> ok(resamples, 0);
  parallel_for(resamples, threads, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    std::vector<CircuitTally> replicate = resample_tallies(tallies, rng);
    std::vector<DepthStats> stats = depth_stats(replicate);
    try {
      FitResult f = fit_decay(stats);
      rates[b] = f.r_omega;
      amplitudes[b] = f.amplitude;
      ok[b] = 1;
    } catch (const FitDegenerateError &) {
    }
  });
  std::vector<double> r_samples, a_samples;
  for (std::size_t b = 0; b < resamples; b++) {
    if (ok[b]) {
      r_samples.push_back(rates[b]);
      a_samples.push_back(amplitudes[b]);
    }
  }
  fit.r_bootstrap = BootstrapSummary::from_samples(std::move(r_samples));
  fit.amplitude_bootstrap = BootstrapSummary::from_samples(std::move(a_samples));
}

}  // namespace qirb
