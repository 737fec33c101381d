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


#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "qirb/builder.hpp"
#include "qirb/errors.hpp"
#include "qirb/sampler.hpp"
#include "qirb/simulator.hpp"
#include "qirb/tableau.hpp"

namespace qirb {
namespace {

QirbCircuit random_circuit(std::size_t n, std::size_t depth, double p_cnot, double p_mcm, bool reset, Rng &rng) {
  SamplingConfig config;
  config.num_wires = n;
  config.p_cnot = p_cnot;
  config.p_mcm = p_mcm;
  config.reset = reset;
  auto core = sample_core_circuit(config, depth, rng);
  return build_qirb_circuit(n, core, reset, rng);
}

void apply_gates(Tableau &t, const CircuitLayer &layer) {
  for (const Gate &g : layer.gates) {
    if (g.is_cnot()) {
      t.apply_cnot(g.wire, g.target);
    } else {
      t.apply(g.clifford, g.wire);
    }
  }
}

struct Injection {
  std::size_t point = 0;
  std::size_t wire = 0;
  PauliCode pauli = PauliCode::I;
};

// Noiseless execution of a reset circuit with one Pauli inserted at a
// numbered point: 0 after prep, then for each dressed layer three points
// (after l1, after l2 and its MCMs, after l3), then after the final layer.
int run_with_injection(const QirbCircuit &c, std::optional<Injection> inj, Rng &rng) {
  Tableau t(c.num_wires);
  std::size_t point = 0;
  auto maybe_inject = [&]() {
    if (inj && inj->point == point) t.apply_pauli(inj->pauli, inj->wire);
    point++;
  };
  OutcomeString bits;
  apply_gates(t, c.prep);
  maybe_inject();
  for (const DressedLayer &dl : c.dressed) {
    apply_gates(t, dl.l1);
    maybe_inject();
    for (std::size_t w : dl.l2.mcm_wires) {
      bool b = t.measure_z(w, rng);
      bits.push_back(b);
      if (b) t.apply_x(w);
    }
    apply_gates(t, dl.l2);
    maybe_inject();
    apply_gates(t, dl.l3);
    maybe_inject();
  }
  apply_gates(t, c.final_layer);
  maybe_inject();
  for (std::size_t q = 0; q < c.num_wires; q++) bits.push_back(t.measure_z(q, rng));
  return classify_outcome(c, bits);
}

// Unsigned tracked Pauli at each injection point, following the circuit's
// recorded dressing choices.
std::vector<SignedPauli> tracked_at_points(const QirbCircuit &c) {
  std::vector<SignedPauli> out;
  SignedPauli s = c.initial;
  out.push_back(s);
  const WireMask all = wire_range_mask(c.num_wires);
  for (const DressedLayer &dl : c.dressed) {
    s = conjugate(dl.l1, s);
    out.push_back(s);
    const WireMask measured = dl.l2.measured_mask();
    s = conjugate(dl.l2, s.restricted_to(all & ~measured));
    for (std::size_t w : dl.l2.mcm_wires) {
      s.set(w, dl.post_meas_component.at(w) == PauliCode::I ? PauliCode::I : PauliCode::Z);
    }
    out.push_back(s);
    s = conjugate(dl.l3, s);
    out.push_back(s);
  }
  s = conjugate(c.final_layer, s);
  out.push_back(s);
  return out;
}

TEST(BuilderTest, DepthZeroIsPrepAndFinal) {
  Rng rng(1);
  QirbCircuit c = build_qirb_circuit(3, {}, true, rng);
  EXPECT_EQ(c.depth(), 0u);
  EXPECT_EQ(c.num_mcms, 0u);
  EXPECT_EQ(c.target.size(), 3u);
  EXPECT_EQ(c.prep.gates.size(), 3u);
  EXPECT_EQ(c.final_layer.gates.size(), 3u);
  // The target is s0 rotated to Z type, so it has the same support.
  for (std::size_t q = 0; q < 3; q++) {
    EXPECT_EQ(c.target.z[q], c.initial.at(q) != PauliCode::I);
  }
}

TEST(BuilderTest, StructuralInvariants) {
  Rng rng(2);
  for (int trial = 0; trial < 200; trial++) {
    const std::size_t n = 1 + trial % 6;
    QirbCircuit c = random_circuit(n, trial % 9, 0.4, 0.5, trial % 2 == 0, rng);
    ASSERT_EQ(c.target.size(), n + c.num_mcms);
    ASSERT_EQ(c.mcm_bit_order.size(), c.num_mcms);
    ASSERT_EQ(c.discard_mask.size(), n + c.num_mcms);
    std::size_t slot = 0;
    for (std::size_t i = 0; i < c.depth(); i++) {
      const DressedLayer &dl = c.dressed[i];
      EXPECT_EQ(dl.l1.num_cnot() + dl.l1.num_mcm() + dl.l3.num_cnot() + dl.l3.num_mcm(), 0u);
      EXPECT_EQ(dl.l1.num_single(), n);
      EXPECT_EQ(dl.l3.num_single(), n);
      EXPECT_TRUE(dl.pre_meas_component.is_z_type());
      for (std::size_t w : dl.l2.mcm_wires) {
        EXPECT_EQ(c.mcm_bit_order[slot], (McmSlot{i, w}));
        const bool identity = dl.pre_meas_component.at(w) == PauliCode::I;
        EXPECT_EQ(c.discard_mask[slot], identity);
        EXPECT_EQ(c.target.z[slot], !identity);
        slot++;
      }
    }
    for (std::size_t v = 0; v < c.target.size(); v++) EXPECT_NE(c.discard_mask[v], c.target.z[v]);
  }
}

TEST(BuilderTest, SingleMcmLayer) {
  Rng rng(3);
  CircuitLayer core;
  core.num_wires = 2;
  core.mcm_wires = {0};
  core.gates = {Gate::single(SingleQubitClifford::hadamard(), 1)};
  int discarded = 0;
  constexpr int kTrials = 4000;
  for (int k = 0; k < kTrials; k++) {
    QirbCircuit c = build_qirb_circuit(2, std::span(&core, 1), true, rng);
    EXPECT_EQ(c.num_mcms, 1u);
    EXPECT_EQ(c.target.size(), 3u);
    discarded += c.discard_mask[0];
  }
  // The measured component is I exactly when the tracked Pauli is I there: 1/4.
  EXPECT_LT(std::abs(discarded - kTrials / 4.0), 4 * std::sqrt(kTrials * 0.25 * 0.75));
}

TEST(BuilderTest, NoiselessShotsAlwaysSucceed) {
  Rng rng(4);
  const NoiseModel clean = NoiseModel::noiseless();
  for (int trial = 0; trial < 120; trial++) {
    const std::size_t n = 1 + trial % 8;
    const bool reset = trial % 3 != 0;
    QirbCircuit c = random_circuit(n, trial % 17, 0.35, 0.4, reset, rng);
    for (ResetFreeMode mode : {ResetFreeMode::kFrameCorrection, ResetFreeMode::kFeedforwardX}) {
      SimulationOptions opts;
      opts.reset_free_mode = mode;
      for (const ShotRecord &s : simulate_shots(c, clean, 50, 1000 + trial, opts)) {
        ASSERT_EQ(s.success, 1) << "trial " << trial;
      }
    }
  }
}

TEST(BuilderTest, TenThousandNoiselessShots) {
  Rng rng(5);
  QirbCircuit c = random_circuit(3, 12, 0.35, 0.5, false, rng);
  auto shots = simulate_shots(c, NoiseModel::noiseless(), 10000, 77);
  for (const ShotRecord &s : shots) ASSERT_EQ(s.success, 1);
}

TEST(BuilderTest, SingleErrorFlipsIffAnticommuting) {
  Rng rng(6);
  std::size_t flips = 0, checks = 0;
  for (int trial = 0; trial < 40; trial++) {
    const std::size_t n = 1 + trial % 3;
    QirbCircuit c = random_circuit(n, 1 + trial % 3, 0.5, 0.6, true, rng);
    auto tracked = tracked_at_points(c);
    for (std::size_t point = 0; point < tracked.size(); point++) {
      for (std::size_t w = 0; w < n; w++) {
        for (PauliCode p : {PauliCode::X, PauliCode::Y, PauliCode::Z}) {
          const bool anti = anticommute(p, tracked[point].at(w));
          for (int shot = 0; shot < 4; shot++) {
            int got = run_with_injection(c, Injection{point, w, p}, rng);
            ASSERT_EQ(got, anti ? -1 : 1) << "trial " << trial << " point " << point << " wire " << w;
          }
          flips += anti;
          checks++;
        }
      }
    }
    EXPECT_EQ(run_with_injection(c, std::nullopt, rng), 1);
  }
  EXPECT_GT(flips, checks / 4);
}

TEST(BuilderTest, UnmeasuredDressingIsUniformPauli) {
  Rng rng(7);
  CircuitLayer core;
  core.num_wires = 2;
  core.mcm_wires = {1};
  core.gates = {Gate::single(SingleQubitClifford::identity(), 0)};
  std::array<int, 4> counts{};
  constexpr int kTrials = 20000;
  for (int k = 0; k < kTrials; k++) {
    QirbCircuit c = build_qirb_circuit(2, std::span(&core, 1), true, rng);
    const Gate &g = c.dressed[0].l1.gates[0];
    ASSERT_EQ(g.wire, 0u);
    int which = -1;
    for (int p = 0; p < 4; p++) {
      if (g.clifford == SingleQubitClifford::pauli(static_cast<PauliCode>(p))) which = p;
    }
    ASSERT_GE(which, 0) << g.clifford.name();
    counts[static_cast<std::size_t>(which)]++;
  }
  for (int c : counts) EXPECT_LT(std::abs(c - kTrials / 4.0), 4 * std::sqrt(kTrials * 0.25 * 0.75));
}

TEST(BuilderTest, MeasuredWireRotationIsRandomized) {
  Rng rng(8);
  CircuitLayer core;
  core.num_wires = 1;
  core.mcm_wires = {0};
  constexpr int kTrials = 20000;
  int negative = 0, kept = 0;
  std::array<int, kNumSingleQubitCliffords> used{};
  for (int k = 0; k < kTrials; k++) {
    QirbCircuit c = build_qirb_circuit(1, std::span(&core, 1), true, rng);
    const DressedLayer &dl = c.dressed[0];
    if (dl.pre_meas_component.at(0) == PauliCode::I) continue;
    kept++;
    negative += dl.pre_meas_component.negative() != c.initial.negative();
    used[dl.l1.gates[0].clifford.index()]++;
  }
  // Z^a randomization: the sign seen by the measurement is a fair coin.
  EXPECT_LT(std::abs(negative - kept / 2.0), 4 * std::sqrt(kept * 0.25));
  // Every Clifford rotates some non-identity Pauli to Z, so all 24 appear.
  for (int u : used) EXPECT_GT(u, 0);
}

TEST(ClassifyTest, Examples) {
  QirbCircuit c;
  c.num_wires = 3;
  c.target = TargetPauli::from_string("+ZIZ");
  EXPECT_EQ(classify_outcome(c, OutcomeString{1, 0, 1}), 1);
  EXPECT_EQ(classify_outcome(c, OutcomeString{1, 0, 0}), -1);
  EXPECT_EQ(classify_outcome(c, OutcomeString{1, 1, 1}), 1);
  EXPECT_EQ(classify_outcome(c, OutcomeString{1, 0, 1}, true), -1);
  QirbCircuit neg;
  neg.num_wires = 1;
  neg.target = TargetPauli::from_string("-Z");
  EXPECT_EQ(classify_outcome(neg, OutcomeString{1}), 1);
  EXPECT_THROW(classify_outcome(c, OutcomeString{1, 0}), UsageError);
}

TEST(ClassifyTest, TargetStringRoundTrip) {
  TargetPauli t = TargetPauli::from_string("-ZIIZ");
  EXPECT_TRUE(t.negative);
  EXPECT_EQ(t.str(), "-ZIIZ");
  EXPECT_THROW(TargetPauli::from_string("+ZX"), UsageError);
}

TEST(ResetFreeTest, AllZeroBitsNeedNoCorrection) {
  Rng rng(9);
  for (int trial = 0; trial < 50; trial++) {
    QirbCircuit c = random_circuit(3, 6, 0.4, 0.6, false, rng);
    OutcomeString zeros(c.num_outcome_bits(), 0);
    FrameResolution r = resolve_reset_free(c, zeros, ResetFreeMode::kFrameCorrection);
    EXPECT_FALSE(r.flip);
    for (auto b : r.corrections) EXPECT_EQ(b, 0);
    EXPECT_TRUE(resolve_reset_free(c, zeros, ResetFreeMode::kFeedforwardX).conditional_x.empty());
  }
}

TEST(ResetFreeTest, RejectsResetCircuits) {
  Rng rng(10);
  QirbCircuit c = random_circuit(2, 3, 0.3, 0.5, true, rng);
  OutcomeString bits(c.num_outcome_bits(), 0);
  EXPECT_THROW(resolve_reset_free(c, bits, ResetFreeMode::kFrameCorrection), UsageError);
}

TEST(ResetFreeTest, CommutingFinalSupportLeavesSign) {
  // One wire, one MCM: after the MCM the frame X sits on the measured wire. If
  // the final target does not include that wire there is no flip.
  Rng rng(11);
  CircuitLayer core;
  core.num_wires = 2;
  core.mcm_wires = {0};
  core.gates = {Gate::single(SingleQubitClifford::identity(), 1)};
  int checked = 0;
  for (int k = 0; k < 400; k++) {
    QirbCircuit c = build_qirb_circuit(2, std::span(&core, 1), false, rng);
    FrameResolution r = resolve_reset_free(c, OutcomeString{1, 0, 0}, ResetFreeMode::kFrameCorrection);
    if (!c.target.z[1]) {
      EXPECT_FALSE(r.flip);
      checked++;
    }
    // The frame never reaches wire 1.
    EXPECT_EQ(r.corrections[2], 0);
  }
  EXPECT_GT(checked, 0);
}

TEST(BuilderTest, SameSeedSameCircuit) {
  Rng a(12), b(12);
  EXPECT_EQ(random_circuit(4, 10, 0.3, 0.3, true, a), random_circuit(4, 10, 0.3, 0.3, true, b));
}

}  // namespace
}  // namespace qirb
