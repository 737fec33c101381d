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
#include <functional>
#include <span>
#include <vector>

namespace qirb {

struct NelderMeadOptions {
  std::size_t max_evaluations = 20000;
  /// Converged once the spread of values is at most
  /// f_tolerance + f_relative_tolerance * |best| and every coordinate spread is
  /// at most x_tolerance.
  double f_tolerance = 1e-18;
  double f_relative_tolerance = 1e-13;
  double x_tolerance = 1e-12;
  /// Initial simplex edge per coordinate. Empty means 10% of the box width.
  std::vector<double> initial_step;
  /// Number of times to rebuild the simplex around the best point after
  /// convergence, which guards against premature collapse.
  std::size_t restarts = 2;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` over the box [lower, upper] with a Nelder-Mead simplex whose
/// trial points are projected onto the box.
NelderMeadResult nelder_mead(const Objective &f, std::vector<double> start, std::span<const double> lower,
                             std::span<const double> upper, const NelderMeadOptions &options = {});

}  // namespace qirb
