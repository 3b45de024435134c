// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/airy.hpp>

#include <rmt/real.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rmt {
namespace {

// Ai = Ai(0) f + Ai'(0) g with f = Σ c_k x^{3k}, g = Σ d_k x^{3k+1},
// c_{k+1} = c_k/((3k+2)(3k+3)), d_{k+1} = d_k/((3k+3)(3k+4)). The partial
// sums cancel down to ~1e-7 of the largest term near |x| = 8, which the
// 256-bit accumulation absorbs.
void airy_maclaurin(double x, double& ai, double& aip) {
  PrecisionGuard guard(256);
  const Real third = Real(1.0) / Real(3.0);
  const Real a0 = exp(log(Real(3.0)) * (Real(-2.0) * third)) / gamma_fn(Real(2.0) * third);
  const Real a1 = -exp(log(Real(3.0)) * (-third)) / gamma_fn(third);
  if (x == 0.0) {
    ai = a0.to_double();
    aip = a1.to_double();
    return;
  }

  const Real X(x);
  const Real X3 = X * X * X;
  Real cf(1.0);
  Real cg(x);
  Real f = cf, g = cg;
  Real fp(0.0), gp(1.0);
  const Real eps = ldexp(Real(1.0), -200);
  for (long k = 0; k < 400; ++k) {
    cf = cf * X3 / Real((3 * k + 2) * (3 * k + 3));
    cg = cg * X3 / Real((3 * k + 3) * (3 * k + 4));
    f = f + cf;
    g = g + cg;
    fp = fp + Real(3 * (k + 1)) * cf / X;
    gp = gp + Real(3 * k + 4) * cg / X;
    if (abs(cf) < eps && abs(cg) < eps) break;
  }
  ai = (a0 * f + a1 * g).to_double();
  aip = (a0 * fp + a1 * gp).to_double();
}

// u_k, v_k coefficient pair of the Poincaré expansions, u_0 = v_0 = 1,
// u_k = u_{k-1}(6k-5)(6k-3)(6k-1)/((2k-1)·216k), v_k = u_k(6k+1)/(1-6k).
void uv_series(double zeta, double& su, double& sv) {
  double uk = 1.0, term_u = 1.0, term_v = 1.0;
  su = 1.0;
  sv = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 80; ++k) {
    uk *= static_cast<double>((6 * k - 5)) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k);
    double vk = uk * (6 * k + 1) / (1.0 - 6 * k);
    term_u = (k % 2 ? -1.0 : 1.0) * uk / std::pow(zeta, k);
    term_v = (k % 2 ? -1.0 : 1.0) * vk / std::pow(zeta, k);
    if (std::abs(term_u) >= prev) break;
    su += term_u;
    sv += term_v;
    prev = std::abs(term_u);
    if (prev < 1e-20) break;
  }
}

// Oscillatory form: the even/odd u_k (resp. v_k) subsequences weighted by
// cos(ζ-π/4) and sin(ζ-π/4).
void uv_series_osc(double zeta, double& su_even, double& su_odd, double& sv_even, double& sv_odd) {
  std::vector<double> u{1.0}, v{1.0};
  for (int k = 1; k < 80; ++k) {
    double uk = u.back() * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k);
    u.push_back(uk);
    v.push_back(uk * (6 * k + 1) / (1.0 - 6 * k));
    if (uk / std::pow(zeta, k) > u[k - 1] / std::pow(zeta, k - 1)) break;
  }
  su_even = su_odd = sv_even = sv_odd = 0.0;
  double sign = 1.0;
  for (size_t j = 0; j + 1 < u.size(); j += 2) {
    su_even += sign * u[j] / std::pow(zeta, static_cast<double>(j));
    sv_even += sign * v[j] / std::pow(zeta, static_cast<double>(j));
    su_odd += sign * u[j + 1] / std::pow(zeta, static_cast<double>(j + 1));
    sv_odd += sign * v[j + 1] / std::pow(zeta, static_cast<double>(j + 1));
    sign = -sign;
  }
}

void airy_asymptotic(double x, double& ai, double& aip) {
  const double sqrt_pi = std::sqrt(M_PI);
  if (x > 0) {
    double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    double su, sv;
    uv_series(zeta, su, sv);
    double pre = std::exp(-zeta) / (2.0 * sqrt_pi);
    ai = pre * su / std::pow(x, 0.25);
    aip = -pre * sv * std::pow(x, 0.25);
  } else {
    double t = -x;
    double zeta = (2.0 / 3.0) * std::pow(t, 1.5);
    double se, so, ve, vo;
    uv_series_osc(zeta, se, so, ve, vo);
    double c = std::cos(zeta - M_PI / 4.0);
    double s = std::sin(zeta - M_PI / 4.0);
    ai = (c * se + s * so) / (sqrt_pi * std::pow(t, 0.25));
    aip = (s * ve - c * vo) * std::pow(t, 0.25) / sqrt_pi;
  }
}

void airy_pair(double x, double& ai, double& aip) {
  if (!(std::abs(x) <= 30.0)) throw std::domain_error("airy: |x| > 30 unsupported");
  if (std::abs(x) <= 8.0)
    airy_maclaurin(x, ai, aip);
  else
    airy_asymptotic(x, ai, aip);
}

} // namespace

double airy_ai(double x) {
  double ai, aip;
  airy_pair(x, ai, aip);
  return ai;
}

double airy_ai_prime(double x) {
  double ai, aip;
  airy_pair(x, ai, aip);
  return aip;
}

} // namespace rmt
