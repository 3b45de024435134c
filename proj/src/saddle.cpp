// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/saddle.hpp>

#include <rmt/rational.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rmt {

namespace {

constexpr double pi = std::numbers::pi;

double norm2(double x, double y) { return x * x + y * y; }

} // namespace

double semicircle_density(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * pi);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * pi) + std::asin(0.5 * x) / pi;
}

double marchenko_pastur_density(double x, double u, double sigma2) {
  if (u < 1.0 || sigma2 <= 0.0) throw std::invalid_argument("marchenko_pastur_density: need u >= 1, sigma2 > 0");
  double su = std::sqrt(u);
  double am = sigma2 * (1.0 - su) * (1.0 - su);
  double ap = sigma2 * (1.0 + su) * (1.0 + su);
  if (x <= am || x >= ap) return 0.0;
  return std::sqrt((ap - x) * (x - am)) / (2.0 * pi * sigma2 * x);
}

OneCutCurve<double> solve_one_cut(const Potential<double>& V) {
  const std::vector<double>& vp = V.tk;
  int d = static_cast<int>(vp.size()) - 1;
  std::vector<double> vpp(static_cast<size_t>(std::max(d, 1)), 0.0);
  for (int i = 1; i <= d; ++i) vpp[static_cast<size_t>(i - 1)] = static_cast<double>(i) * vp[static_cast<size_t>(i)];

  double c = 0.0, g = 1.0;
  auto residual = [&](double cc, double gg, double& f1, double& f2) {
    std::vector<double> w = detail::joukowsky_vprime_coeffs(vp, cc, gg);
    f1 = w[0];
    f2 = (w.size() > 1 ? w[1] : 0.0) - 1.0 / gg;
  };

  double f1, f2;
  residual(c, g, f1, f2);
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    if (norm2(f1, f2) < 1e-26) {
      converged = true;
      break;
    }
    std::vector<double> wpp = detail::joukowsky_vprime_coeffs(vpp, c, g);
    auto wpp_at = [&](size_t k) { return k < wpp.size() ? wpp[k] : 0.0; };
    double j11 = wpp_at(0);
    double j12 = 2.0 * wpp_at(1);
    double j21 = wpp_at(1);
    double j22 = wpp_at(0) + wpp_at(2) + 1.0 / (g * g);
    double det = j11 * j22 - j12 * j21;
    if (det == 0.0) throw NewtonError("solve_one_cut: singular Jacobian");
    double dc = -(j22 * f1 - j12 * f2) / det;
    double dg = -(-j21 * f1 + j11 * f2) / det;

    double lambda = 1.0;
    double base = norm2(f1, f2);
    bool stepped = false;
    for (int h = 0; h < 60; ++h) {
      double cn = c + lambda * dc, gn = g + lambda * dg;
      if (gn > 0.0) {
        double nf1, nf2;
        residual(cn, gn, nf1, nf2);
        if (norm2(nf1, nf2) < base * (1.0 - 1e-4 * lambda) || norm2(nf1, nf2) < 1e-26) {
          c = cn;
          g = gn;
          f1 = nf1;
          f2 = nf2;
          stepped = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!stepped) throw NewtonError("solve_one_cut: step halving stalled");
  }
  if (!converged) {
    residual(c, g, f1, f2);
    if (norm2(f1, f2) >= 1e-26) throw NewtonError("solve_one_cut: no convergence in 200 iterations");
  }

  OneCutCurve<double> curve = detail::build_one_cut(vp, c, g);
  for (int i = 0; i < 1024; ++i) {
    double theta = pi * (static_cast<double>(i) + 0.5) / 1024.0;
    double x = c + 2.0 * g * std::cos(theta);
    double rho = poly::eval(curve.M, x) * 2.0 * g * std::abs(std::sin(theta)) / (2.0 * pi);
    if (rho < -1e-12) throw NegativeDensityError("solve_one_cut: density negative on the cut");
  }
  return curve;
}

OneCutCurve<FormalScalar> solve_one_cut(const Potential<FormalScalar>& V) {
  const std::vector<FormalScalar>& vp = V.tk;
  int d = static_cast<int>(vp.size()) - 1;
  int order = 0;
  for (const auto& coeff : vp) order = std::max(order, coeff.order());
  for (int i = 0; i <= d; i += 2)
    if (!vp[static_cast<size_t>(i)].is_zero())
      throw std::invalid_argument("solve_one_cut(formal): potential must be even");
  if (d < 1 || vp[1].coeff(0) == Rational(0))
    throw std::invalid_argument("solve_one_cut(formal): t-free part must be x^2/2 up to scale");
  for (int i = 3; i <= d; i += 2)
    if (vp[static_cast<size_t>(i)].coeff(0) != Rational(0))
      throw std::invalid_argument("solve_one_cut(formal): t-free part must be quadratic");

  // v_1 = 1/γ in u = γ²: Σ_{odd i} t_{i+1} C(i,(i−1)/2) u^{(i+1)/2} = 1.
  auto F = [&](const FormalDual& u) {
    FormalDual acc(FormalScalar(-1L));
    for (int i = 1; i <= d; i += 2) {
      FormalDual upow(FormalScalar(1L));
      for (int p = 0; p < (i + 1) / 2; ++p) upow = upow * u;
      FormalScalar coeff = vp[static_cast<size_t>(i)] * FormalScalar(binomial(static_cast<unsigned long>(i), static_cast<unsigned long>((i - 1) / 2)));
      acc = acc + FormalDual(coeff) * upow;
    }
    return acc;
  };
  Rational u0 = Rational(1) / vp[1].coeff(0);
  FormalScalar u = series_newton(F, u0, order);
  FormalScalar gamma = u.sqrt();
  return detail::build_one_cut(vp, FormalScalar(0L), gamma);
}

double one_cut_density(const OneCutCurve<double>& curve, double x) {
  double a = curve.edge_a(), b = curve.edge_b();
  if (x <= b || x >= a) return 0.0;
  return poly::eval(curve.M, x) * std::sqrt((a - x) * (x - b)) / (2.0 * pi);
}

double joukowsky_z(const OneCutCurve<double>& curve, double x) {
  double a = curve.edge_a(), b = curve.edge_b();
  if (x > b && x < a) throw std::invalid_argument("joukowsky_z: x on the cut");
  double s = x - curve.c;
  double root = std::sqrt(s * s - 4.0 * curve.gamma * curve.gamma);
  return (s + (s >= 0.0 ? root : -root)) / (2.0 * curve.gamma);
}

double one_cut_resolvent(const OneCutCurve<double>& curve, double x) {
  double z = joukowsky_z(curve, x);
  double acc = 0.0;
  double zk = 1.0;
  for (size_t k = 0; k < curve.v.size(); ++k) {
    acc += curve.v[k] / zk;
    zk *= z;
  }
  // v_0 vanishes at a solution; including it keeps the raw curve faithful.
  return acc;
}

TwoCutQuartic quartic_two_cut(double t) {
  if (!(t > -0.25 && t < 0.0)) throw std::invalid_argument("quartic_two_cut: need -1/4 < t < 0");
  TwoCutQuartic cut;
  cut.t = t;
  double r = 2.0 * std::sqrt(-t);
  cut.a = std::sqrt(1.0 + r);
  cut.b = std::sqrt(1.0 - r);
  return cut;
}

double TwoCutQuartic::density(double x) const {
  double ax = std::abs(x);
  if (ax <= b || ax >= a) return 0.0;
  return ax * std::sqrt((a * a - x * x) * (x * x - b * b)) / (2.0 * pi * std::abs(t));
}

double TwoCutQuartic::resolvent(double x) const {
  double ax = std::abs(x);
  if (ax >= b && ax <= a) throw std::invalid_argument("TwoCutQuartic::resolvent: x on the cut");
  double s = std::sqrt((x * x - a * a) * (x * x - b * b));
  // Physical branch: + outside the bands, − in the central gap.
  if (ax < b) s = -s;
  return (x - x * x * x + x * s) / (2.0 * t);
}

std::complex<double> tricomi_resolvent(const Potential<double>& V, double b, double a, double x) {
  if (!(a > b)) throw std::invalid_argument("tricomi_resolvent: need a > b");
  if (x >= b && x <= a) throw std::invalid_argument("tricomi_resolvent: x on the cut");
  double cm = 0.5 * (a + b), gm = 0.25 * (a - b);
  const int m = 512;
  double sum = 0.0;
  for (int j = 1; j <= m; ++j) {
    double xp = cm + 2.0 * gm * std::cos(pi * (static_cast<double>(j) - 0.5) / m);
    sum += V.eval_deriv(xp) / (x - xp);
  }
  sum *= pi / m;
  double root = std::sqrt((x - a) * (x - b));
  if (x < cm) root = -root;
  return {root * sum / (2.0 * pi), 0.0};
}

double two_point_one_cut(const OneCutCurve<double>& curve, double x1, double x2) {
  double z1 = joukowsky_z(curve, x1);
  double z2 = joukowsky_z(curve, x2);
  auto dz_dx = [&](double z) { return 1.0 / (curve.gamma * (1.0 - 1.0 / (z * z))); };
  double denom = z2 * (z1 - 1.0 / z2);
  return dz_dx(z1) * dz_dx(z2) / (denom * denom);
}

} // namespace rmt
