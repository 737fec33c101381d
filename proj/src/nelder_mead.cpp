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

#include "qirb/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qirb/errors.hpp"

namespace qirb {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

class Minimizer {
 public:
  Minimizer(const Objective &f, std::span<const double> lower, std::span<const double> upper,
            const NelderMeadOptions &options)
      : f_(f), lower_(lower), upper_(upper), options_(options) {}

  Vertex evaluate(std::vector<double> x) {
    for (std::size_t i = 0; i < x.size(); i++) {
      x[i] = std::clamp(x[i], lower_[i], upper_[i]);
    }
    evaluations_++;
    double v = f_(x);
    if (std::isnan(v)) {
      v = HUGE_VAL;
    }
    return Vertex{std::move(x), v};
  }

  std::vector<Vertex> initial_simplex(const std::vector<double> &center) {
    const std::size_t dim = center.size();
    std::vector<Vertex> simplex;
    simplex.push_back(evaluate(center));
    for (std::size_t i = 0; i < dim; i++) {
      double step = options_.initial_step.empty() ? 0.1 * (upper_[i] - lower_[i]) : options_.initial_step[i];
      std::vector<double> x = center;
      // Step away from the nearer bound so the vertex stays distinct after projection.
      x[i] = (x[i] + step <= upper_[i]) ? x[i] + step : x[i] - step;
      simplex.push_back(evaluate(std::move(x)));
    }
    return simplex;
  }

  bool converged(const std::vector<Vertex> &simplex) const {
    double spread_f = simplex.back().f - simplex.front().f;
    double allowed = options_.f_tolerance + options_.f_relative_tolerance * std::abs(simplex.front().f);
    if (!(spread_f <= allowed)) {
      return false;
    }
    for (std::size_t k = 1; k < simplex.size(); k++) {
      for (std::size_t i = 0; i < simplex[k].x.size(); i++) {
        if (std::abs(simplex[k].x[i] - simplex[0].x[i]) > options_.x_tolerance) {
          return false;
        }
      }
    }
    return true;
  }

  bool run(std::vector<Vertex> &simplex) {
    const std::size_t dim = simplex.size() - 1;
    auto by_value = [](const Vertex &a, const Vertex &b) { return a.f < b.f; };
    while (true) {
      std::stable_sort(simplex.begin(), simplex.end(), by_value);
      if (converged(simplex)) {
        return true;
      }
      if (evaluations_ >= options_.max_evaluations) {
        return false;
      }
      std::vector<double> centroid(dim, 0.0);
      for (std::size_t k = 0; k < dim; k++) {
        for (std::size_t i = 0; i < dim; i++) {
          centroid[i] += simplex[k].x[i] / static_cast<double>(dim);
        }
      }
      auto along = [&](double t) {
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; i++) {
          x[i] = centroid[i] + t * (simplex[dim].x[i] - centroid[i]);
        }
        return x;
      };
      Vertex reflected = evaluate(along(-1.0));
      if (reflected.f < simplex[0].f) {
        Vertex expanded = evaluate(along(-2.0));
        simplex[dim] = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
        continue;
      }
      if (reflected.f < simplex[dim - 1].f) {
        simplex[dim] = std::move(reflected);
        continue;
      }
      bool outside = reflected.f < simplex[dim].f;
      Vertex contracted = evaluate(along(outside ? -0.5 : 0.5));
      if (contracted.f < (outside ? reflected.f : simplex[dim].f)) {
        simplex[dim] = std::move(contracted);
        continue;
      }
      for (std::size_t k = 1; k <= dim; k++) {
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; i++) {
          x[i] = simplex[0].x[i] + 0.5 * (simplex[k].x[i] - simplex[0].x[i]);
        }
        simplex[k] = evaluate(std::move(x));
      }
    }
  }

  std::size_t evaluations() const {
    return evaluations_;
  }

 private:
  const Objective &f_;
  std::span<const double> lower_;
  std::span<const double> upper_;
  const NelderMeadOptions &options_;
  std::size_t evaluations_ = 0;
};

}  // namespace

NelderMeadResult nelder_mead(const Objective &f, std::vector<double> start, std::span<const double> lower,
                             std::span<const double> upper, const NelderMeadOptions &options) {
  const std::size_t dim = start.size();
  if (dim == 0 || lower.size() != dim || upper.size() != dim) {
    throw UsageError("Nelder-Mead needs matching, non-empty start and bound vectors");
  }
  if (!options.initial_step.empty() && options.initial_step.size() != dim) {
    throw UsageError("Nelder-Mead initial step must have one entry per coordinate");
  }
  for (std::size_t i = 0; i < dim; i++) {
    if (!(lower[i] <= upper[i])) {
      throw UsageError("Nelder-Mead lower bound exceeds upper bound");
    }
  }
  Minimizer minimizer(f, lower, upper, options);
  std::vector<Vertex> simplex = minimizer.initial_simplex(start);
  bool converged = minimizer.run(simplex);
  for (std::size_t r = 0; r < options.restarts && converged; r++) {
    std::vector<Vertex> fresh = minimizer.initial_simplex(simplex.front().x);
    converged = minimizer.run(fresh);
    if (fresh.front().f <= simplex.front().f) {
      simplex = std::move(fresh);
    }
  }
  NelderMeadResult result;
  result.x = simplex.front().x;
  result.value = simplex.front().f;
  result.evaluations = minimizer.evaluations();
  result.converged = converged;
  return result;
}

}  // namespace qirb
