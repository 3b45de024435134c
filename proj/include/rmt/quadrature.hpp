// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/real.hpp>

#include <functional>
#include <vector>

namespace rmt {

/// Double-exponential quadrature over the whole real line with the map
/// x = sinh((π/2) sinh t): trapezoid sums on a shrinking step, halving until
/// successive levels agree to roughly the working precision. Integrands must
/// decay at least like a Gaussian.
Real de_integrate(const std::function<Real(const Real&)>& f, int max_level = 14);

/// Same pass for a family sharing the nodes: returns ∫ x^k f(x) dx for
/// k = 0..count, converged jointly. Halving stops no earlier than min_level
/// (set min_level = max_level to force a fixed step); levels_used reports the
/// last level summed.
std::vector<Real> de_integrate_moments(const std::function<Real(const Real&)>& f, int count, int max_level = 14,
                                       int min_level = 4, int* levels_used = nullptr);

struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule with n points on [a, b].
GaussLegendre gauss_legendre(int n, double a, double b);

} // namespace rmt
