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
#include <vector>

#include "qirb/builder.hpp"
#include "qirb/noise.hpp"
#include "qirb/rng.hpp"

namespace qirb {

struct SimulationOptions {
  ResetFreeMode reset_free_mode = ResetFreeMode::kFrameCorrection;
  /// Worker threads; 0 means one per hardware thread.
  std::size_t threads = 1;
};

struct ShotRecord {
  /// Raw observed bits in canonical order (MCMs first, then final readout).
  OutcomeString outcome;
  /// +1 success, -1 failure.
  int success = 1;
  bool operator==(const ShotRecord &) const = default;
};

/// Runs a single noisy shot. All randomness is drawn from `rng`.
ShotRecord simulate_shot(const QirbCircuit &circuit, const NoiseModel &noise, Rng &rng,
                         ResetFreeMode mode = ResetFreeMode::kFrameCorrection);

/// Shot k uses its own generator seeded with derive_seed(seed, k), so the
/// result does not depend on the thread count.
std::vector<ShotRecord> simulate_shots(const QirbCircuit &circuit, const NoiseModel &noise, std::size_t shots,
                                       std::uint64_t seed, const SimulationOptions &options = {});

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn &&body);

std::size_t resolve_thread_count(std::size_t requested);

}  // namespace qirb

#include "qirb/parallel.inl"
