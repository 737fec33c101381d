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


#include <cmath>
#include <cstddef>

#include <gtest/gtest.h>

#include "qirb/analysis.hpp"
#include "qirb/errors.hpp"
#include "qirb/sampler.hpp"
#include "qirb/simulator.hpp"
#include "qirb/theory.hpp"

namespace qirb {
namespace {

QirbCircuit random_circuit(std::size_t n, std::size_t depth, double p_cnot, double p_mcm, bool reset, Rng &rng) {
  SamplingConfig config;
  config.num_wires = n;
  config.p_cnot = p_cnot;
  config.p_mcm = p_mcm;
  auto core = sample_core_circuit(config, depth, rng);
  return build_qirb_circuit(n, core, reset, rng);
}

double mean_success(const std::vector<ShotRecord> &shots) {
  return compute_f(shots);
}

TEST(SimulatorTest, CertainPreFlipGivesMinusHalf) {
  NoiseModel noise;
  noise.mcm.pre_flip = 1.0;
  noise.final_readout_flip = 0.0;
  Rng rng(1);
  CircuitLayer core;
  core.num_wires = 1;
  core.mcm_wires = {0};
  constexpr int kCircuits = 20000;
  double total = 0;
  for (int k = 0; k < kCircuits; k++) {
    QirbCircuit c = build_qirb_circuit(1, std::span(&core, 1), true, rng);
    auto shots = simulate_shots(c, noise, 1, k);
    total += shots[0].success;
    // Deterministic per circuit: the flip matters iff the measured component is Z.
    EXPECT_EQ(shots[0].success, c.target.z[0] ? -1 : 1);
  }
  const double mean = total / kCircuits;
  const double sigma = std::sqrt((1 - 0.25) / kCircuits);
  EXPECT_LT(std::abs(mean - (1 - 2 * p_anti(1))), 4 * sigma);
  EXPECT_DOUBLE_EQ(1 - 2 * p_anti(1), -0.5);
}

TEST(SimulatorTest, SingleReadoutLocationIsLinear) {
  constexpr double q = 0.1;
  NoiseModel noise;
  noise.final_readout_flip = q;
  Rng rng(2);
  QirbCircuit c;
  do {
    c = build_qirb_circuit(1, {}, true, rng);
  } while (!c.target.z[0]);
  constexpr std::size_t kShots = 100000;
  double mean = mean_success(simulate_shots(c, noise, kShots, 5));
  double se = std::sqrt((1 - (1 - 2 * q) * (1 - 2 * q)) / kShots);
  EXPECT_LT(std::abs(mean - (1 - 2 * q)), 4 * se);
  EXPECT_DOUBLE_EQ(exact_success_expectation(c, noise), 1 - 2 * q);
}

TEST(SimulatorTest, FrameModesAgreeShotByShot) {
  Rng rng(3);
  NoiseModel noise = NoiseModel::depolarizing(0.99, 0.97, 0.05);
  for (int trial = 0; trial < 60; trial++) {
    QirbCircuit c = random_circuit(1 + trial % 4, 1 + trial % 12, 0.4, 0.5, false, rng);
    SimulationOptions frame, feed;
    frame.reset_free_mode = ResetFreeMode::kFrameCorrection;
    feed.reset_free_mode = ResetFreeMode::kFeedforwardX;
    auto a = simulate_shots(c, noise, 200, 900 + trial, frame);
    auto b = simulate_shots(c, noise, 200, 900 + trial, feed);
    for (std::size_t k = 0; k < a.size(); k++) ASSERT_EQ(a[k].success, b[k].success);
  }
}

TEST(SimulatorTest, ThreadCountDoesNotChangeShots) {
  Rng rng(4);
  QirbCircuit c = random_circuit(3, 10, 0.35, 0.3, true, rng);
  NoiseModel noise = NoiseModel::depolarizing(0.99, 0.98, 0.03);
  SimulationOptions one, many;
  one.threads = 1;
  many.threads = 4;
  EXPECT_EQ(simulate_shots(c, noise, 500, 11, one), simulate_shots(c, noise, 500, 11, many));
}

TEST(SimulatorTest, NoiselessDiscardedMcmBitsAreUniform) {
  Rng rng(5);
  int ones = 0, total = 0;
  for (int trial = 0; trial < 3000; trial++) {
    QirbCircuit c = random_circuit(2, 4, 0.35, 0.8, true, rng);
    ShotRecord s = simulate_shots(c, NoiseModel::noiseless(), 1, trial)[0];
    ASSERT_EQ(s.success, 1);
    for (std::size_t j = 0; j < c.num_mcms; j++) {
      if (c.discard_mask[j]) {
        ones += s.outcome[j];
        total++;
      }
    }
  }
  ASSERT_GT(total, 500);
  EXPECT_LT(std::abs(ones - total / 2.0), 4 * std::sqrt(total * 0.25));
}

TEST(SimulatorTest, MonteCarloMatchesExactExpectation) {
  Rng rng(6);
  NoiseModel noise = NoiseModel::depolarizing(0.99, 0.97, 0.03);
  noise.mcm.unmeasured_depolarizing = 0.004;
  for (int trial = 0; trial < 8; trial++) {
    QirbCircuit c = random_circuit(1 + trial % 3, 2 + trial, 0.4, 0.4, trial % 2 == 0, rng);
    constexpr std::size_t kShots = 20000;
    double mean = mean_success(simulate_shots(c, noise, kShots, 123 + trial));
    double expect = exact_success_expectation(c, noise);
    double se = std::sqrt(std::max(1 - expect * expect, 1e-12) / kShots);
    EXPECT_LT(std::abs(mean - expect), 4 * se) << "trial " << trial;
  }
}

TEST(SimulatorTest, RejectsZeroShots) {
  Rng rng(7);
  QirbCircuit c = random_circuit(1, 1, 0, 0, true, rng);
  EXPECT_THROW(simulate_shots(c, NoiseModel::noiseless(), 0, 1), UsageError);
}

TEST(SimulatorTest, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hits[i]++; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

}  // namespace
}  // namespace qirb
