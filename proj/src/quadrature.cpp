// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/quadrature.hpp>

#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>
#include <utility>

namespace rmt {

namespace {

constexpr double de_tmax = 4.0;

} // namespace

Real de_integrate(const std::function<Real(const Real&)>& f, int max_level) {
  auto wrapped = [&](const Real& x) { return f(x); };
  return de_integrate_moments(wrapped, 0, max_level)[0];
}

std::vector<Real> de_integrate_moments(const std::function<Real(const Real&)>& f, int count, int max_level,
                                       int min_level, int* levels_used) {
  if (count < 0) throw std::invalid_argument("de_integrate_moments: count < 0");
  Real eps = ldexp(Real(1L), -static_cast<long>(Real::working_bits() - 64));

  auto eval = [&](double t, std::vector<Real>& acc) {
    Real tr(t);
    Real half_pi = Real::pi() / Real(2L);
    Real s = half_pi * sinh(tr);
    Real x = sinh(s);
    Real w = half_pi * cosh(tr) * cosh(s);
    Real fx = f(x) * w;
    Real xk(1L);
    for (int k = 0; k <= count; ++k) {
      acc[static_cast<size_t>(k)] += fx * xk;
      xk *= x;
    }
  };

  double h = 1.0;
  std::vector<Real> total(static_cast<size_t>(count) + 1, Real(0L));
  for (double t = -de_tmax; t <= de_tmax + 1e-12; t += h) eval(t, total);
  for (auto& v : total) v *= Real(h);

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    std::vector<Real> fresh(static_cast<size_t>(count) + 1, Real(0L));
    for (double t = -de_tmax + h; t <= de_tmax + 1e-12; t += 2.0 * h) eval(t, fresh);
    std::vector<Real> next(static_cast<size_t>(count) + 1, Real(0L));
    bool close = true;
    for (size_t k = 0; k < total.size(); ++k) {
      next[k] = total[k] / Real(2L) + fresh[k] * Real(h);
      if (abs(next[k] - total[k]) > eps * (Real(1L) + abs(next[k]))) close = false;
    }
    total = std::move(next);
    if (levels_used) *levels_used = level;
    if (close && level >= min_level) return total;
  }
  return total;
}

namespace {

// P_n and P'_n on [−1,1] via the three-term recurrence.
std::pair<double, double> legendre_pd(int n, double t) {
  double pm = 1.0, p = t;
  if (n == 0) return {1.0, 0.0};
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0) * t * p - k * pm) / (k + 1.0);
    pm = p;
    p = next;
  }
  double dp = n * (pm - t * p) / (1.0 - t * t);
  return {p, dp};
}

} // namespace

GaussLegendre gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  GaussLegendre rule;
  rule.x.resize(static_cast<size_t>(n));
  rule.w.resize(static_cast<size_t>(n));
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");
  // GSL falls back to ~1e-10 Newton iterates outside its tabulated sizes, so
  // polish every node to machine precision before scaling to [a, b].
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    size_t idx = static_cast<size_t>(i);
    double x, w;
    gsl_integration_glfixed_point(-1.0, 1.0, idx, &x, &w, table.get());
    auto [p, dp] = legendre_pd(n, x);
    for (int pass = 0; pass < 2 && dp != 0.0; ++pass) {
      x -= p / dp;
      std::tie(p, dp) = legendre_pd(n, x);
    }
    rule.x[idx] = mid + half * x;
    rule.w[idx] = 2.0 * half / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

} // namespace rmt
