// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/rng.hpp>

#include <cmath>

namespace rmt {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(0x9E3779B97F4A7C15ull * (index + 1))));
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double SplitMix64::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double r = std::sqrt(-2.0 * std::log(uniform()));
  double theta = 2.0 * M_PI * uniform();
  cached_ = r * std::sin(theta);
  have_cached_ = true;
  return r * std::cos(theta);
}

} // namespace rmt
