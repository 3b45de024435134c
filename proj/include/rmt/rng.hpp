// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

namespace rmt {

/// splitmix64: a counter advanced by the golden-ratio increment, pushed
/// through an avalanche mix. stream(seed, index) derives decorrelated
/// per-draw generators; normals come from Box-Muller with the second
/// variate cached.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();

  /// Uniform on (0, 1].
  double uniform();

  /// Standard normal.
  double normal();

 private:
  std::uint64_t state_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

} // namespace rmt
