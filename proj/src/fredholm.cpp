// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/fredholm.hpp>

#include <rmt/airy.hpp>
#include <rmt/quadrature.hpp>
#include <rmt/real.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmt {
namespace {

double sine_unit(double x, double y) {
  double d = M_PI * (x - y);
  if (std::abs(d) < 1e-8) return 1.0 - d * d / 6.0;
  return std::sin(d) / d;
}

double airy_kernel_pair(double x, double ax, double apx, double y, double ay, double apy) {
  if (std::abs(x - y) < 1e-9) {
    double m = 0.5 * (x + y);
    double am = airy_ai(m), apm = airy_ai_prime(m);
    return apm * apm - m * am * am;
  }
  return (ax * apy - apx * ay) / (x - y);
}

double tw_scale(double s) { return (12.0 - s) / 8.0; }

struct NystromRule {
  std::vector<double> x;
  std::vector<double> w;
};

NystromRule build_rule(const KernelSpec& spec) {
  NystromRule rule;
  if (spec.tag == KernelTag::airy && std::isinf(spec.b)) {
    GaussLegendre gl = gauss_legendre(spec.m, 0.0, 1.0);
    double scale = tw_scale(spec.a);
    rule.x.resize(gl.x.size());
    rule.w.resize(gl.x.size());
    for (size_t i = 0; i < gl.x.size(); ++i) {
      double u = gl.x[i];
      rule.x[i] = spec.a + scale * std::log(1.0 / (1.0 - u));
      rule.w[i] = gl.w[i] * scale / (1.0 - u);
    }
    return rule;
  }
  if (std::isinf(spec.a) || std::isinf(spec.b))
    throw std::invalid_argument("fredholm_det: infinite interval supported only for the airy tag");
  GaussLegendre gl = gauss_legendre(spec.m, spec.a, spec.b);
  rule.x = std::move(gl.x);
  rule.w = std::move(gl.w);
  return rule;
}

} // namespace

KernelSpec sine_kernel_spec(double s, int m) {
  KernelSpec spec;
  spec.tag = KernelTag::sine_unit_density;
  spec.a = 0.0;
  spec.b = s;
  spec.m = m;
  return spec;
}

KernelSpec airy_kernel_spec(double s, int m) {
  KernelSpec spec;
  spec.tag = KernelTag::airy;
  spec.a = s;
  spec.b = std::numeric_limits<double>::infinity();
  spec.m = m;
  return spec;
}

KernelSpec cd_kernel_spec(const RecurrenceTable& table, int N, double a, double b, int m) {
  KernelSpec spec;
  spec.tag = KernelTag::cd_finite_n;
  spec.a = a;
  spec.b = b;
  spec.m = m;
  spec.table = &table;
  spec.N = N;
  return spec;
}

KernelSpec user_kernel_spec(std::function<double(double, double)> K, double a, double b, int m) {
  KernelSpec spec;
  spec.tag = KernelTag::user;
  spec.a = a;
  spec.b = b;
  spec.m = m;
  spec.kernel = std::move(K);
  return spec;
}

double kernel_value(const KernelSpec& spec, double x, double y) {
  switch (spec.tag) {
    case KernelTag::sine_unit_density:
      return sine_unit(x, y);
    case KernelTag::airy:
      return airy_kernel_pair(x, airy_ai(x), airy_ai_prime(x), y, airy_ai(y), airy_ai_prime(y));
    case KernelTag::cd_finite_n: {
      if (!spec.table) throw std::invalid_argument("kernel_value: cd kernel without a recurrence table");
      PrecisionGuard guard(320);
      return cd_kernel(*spec.table, spec.N, Real(x), Real(y)).to_double();
    }
    case KernelTag::user:
      if (!spec.kernel) throw std::invalid_argument("kernel_value: user kernel not set");
      return spec.kernel(x, y);
  }
  throw std::logic_error("kernel_value: unknown tag");
}

double fredholm_det(const KernelSpec& spec) {
  if (spec.m < 2) throw std::invalid_argument("fredholm_det: need m >= 2");
  if (!std::isinf(spec.b) && spec.b <= spec.a) return 1.0;

  NystromRule rule = build_rule(spec);
  const int m = static_cast<int>(rule.x.size());
  Eigen::MatrixXd K(m, m);

  if (spec.tag == KernelTag::airy) {
    std::vector<double> ai(m), aip(m);
    for (int i = 0; i < m; ++i) {
      ai[i] = airy_ai(rule.x[i]);
      aip[i] = airy_ai_prime(rule.x[i]);
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        K(i, j) = i == j ? aip[i] * aip[i] - rule.x[i] * ai[i] * ai[i]
                         : airy_kernel_pair(rule.x[i], ai[i], aip[i], rule.x[j], ai[j], aip[j]);
  } else if (spec.tag == KernelTag::cd_finite_n) {
    if (!spec.table) throw std::invalid_argument("fredholm_det: cd kernel without a recurrence table");
    PrecisionGuard guard(320);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) {
        double v = cd_kernel(*spec.table, spec.N, Real(rule.x[i]), Real(rule.x[j])).to_double();
        K(i, j) = v;
        K(j, i) = v;
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) K(i, j) = kernel_value(spec, rule.x[i], rule.x[j]);
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!std::isfinite(K(i, j))) throw std::runtime_error("fredholm_det: non-finite kernel value at nodes");
      A(i, j) -= std::sqrt(rule.w[i] * rule.w[j]) * K(i, j);
    }
  return A.partialPivLu().determinant();
}

GapCurve spacing_distribution(const std::vector<double>& s_grid, int m) {
  if (s_grid.size() < 5) throw std::invalid_argument("spacing_distribution: grid too coarse (fewer than 5 points)");
  if (s_grid.front() < 0.0) throw std::invalid_argument("spacing_distribution: negative s");
  const double h = s_grid[1] - s_grid[0];
  if (h <= 0.0) throw std::invalid_argument("spacing_distribution: grid not increasing");
  for (size_t i = 1; i < s_grid.size(); ++i)
    if (std::abs(s_grid[i] - s_grid[i - 1] - h) > 1e-9 * std::max(1.0, h))
      throw std::invalid_argument("spacing_distribution: grid not uniform");

  GapCurve curve;
  curve.s = s_grid;
  curve.E.reserve(s_grid.size());
  for (double s : s_grid) curve.E.push_back(fredholm_det(sine_kernel_spec(s, m)));

  const size_t n = s_grid.size();
  curve.P.assign(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) curve.P[i] = (curve.E[i + 1] - 2.0 * curve.E[i] + curve.E[i - 1]) / (h * h);
  curve.P[0] = 3.0 * curve.P[1] - 3.0 * curve.P[2] + curve.P[3];
  curve.P[n - 1] = 3.0 * curve.P[n - 2] - 3.0 * curve.P[n - 3] + curve.P[n - 4];
  return curve;
}

double tracy_widom_beta2(double s, int m) {
  if (s < -10.0) throw std::domain_error("tracy_widom_beta2: s < -10 unsupported");
  KernelSpec spec = airy_kernel_spec(s, m);
  double coarse = fredholm_det(spec);
  spec.m = 2 * m;
  double fine = fredholm_det(spec);
  if (std::abs(coarse - fine) > 1e-9)
    throw std::runtime_error("tracy_widom_beta2: node count insufficient for convergence");
  return fine;
}

double finite_n_gap(const RecurrenceTable& table, int N, double a, double b, int m) {
  if (b <= a) return 1.0;
  auto diag = [&](double x) {
    PrecisionGuard guard(320);
    return cd_kernel(table, N, Real(x), Real(x)).to_double();
  };
  double lo = a, hi = b;
  if (std::isinf(hi)) {
    hi = std::max(std::isinf(lo) ? 0.0 : lo, 0.0) + 1.0;
    while (diag(hi) > 1e-24 && hi < 64.0) hi += 1.0;
  }
  if (std::isinf(lo)) {
    lo = std::min(hi - 1.0, 0.0) - 1.0;
    while (diag(lo) > 1e-24 && lo > -64.0) lo -= 1.0;
  }
  if (hi <= lo) return 1.0;
  return fredholm_det(cd_kernel_spec(table, N, lo, hi, m));
}

} // namespace rmt
