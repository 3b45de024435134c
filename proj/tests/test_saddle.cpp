// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rmt/saddle.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace rmt;

namespace {

constexpr double pi = std::numbers::pi;

// Midpoint rule after the substitution x = mid + half cos(theta), which
// removes the edge square-root singularities.
template <class F>
double cut_integral(F&& f, double lo, double hi, int n = 4096) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double theta = pi * (i + 0.5) / n;
    double x = mid + half * std::cos(theta);
    acc += f(x) * half * std::sin(theta);
  }
  return acc * pi / n;
}

Potential<double> paper_quartic(double t) {
  return Potential<double>({0.0, 1.0 / t, 0.0, -1.0 / t});
}

} // namespace

TEST_CASE("semicircle density and cdf") {
  CHECK(semicircle_density(0.0) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK(semicircle_density(2.0) == 0.0);
  CHECK(semicircle_density(-2.5) == 0.0);
  CHECK(cut_integral([](double x) { return semicircle_density(x); }, -2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(semicircle_cdf(-2.0) == 0.0);
  CHECK(semicircle_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(semicircle_cdf(2.0) == 1.0);
  double h = 1e-6;
  for (double x : {-1.3, -0.4, 0.7, 1.9}) {
    double fd = (semicircle_cdf(x + h) - semicircle_cdf(x - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(semicircle_density(x)).epsilon(1e-8));
  }
}

TEST_CASE("marchenko-pastur normalization, mean, duality") {
  double u = 4.0, s2 = 0.25;
  double su = std::sqrt(u);
  double am = s2 * (1.0 - su) * (1.0 - su);
  double ap = s2 * (1.0 + su) * (1.0 + su);
  CHECK(am == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ap == doctest::Approx(2.25).epsilon(1e-15));
  double mass = cut_integral([&](double x) { return marchenko_pastur_density(x, u, s2); }, am, ap);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  double mean = cut_integral([&](double x) { return x * marchenko_pastur_density(x, u, s2); }, am, ap);
  CHECK(mean == doctest::Approx(u * s2).epsilon(1e-10));

  // Aspect-ratio duality: the classical y = 1/u law with unit variance is the
  // same function as the u >= 1 law with variance y.
  double y = 1.0 / u;
  for (double x : {0.3, 0.8, 1.5, 2.1}) {
    double classical = std::sqrt((ap - x) * (x - am)) / (2.0 * pi * y * x);
    CHECK(marchenko_pastur_density(x, u, s2) == doctest::Approx(classical).epsilon(1e-13));
  }
  CHECK_THROWS_AS(marchenko_pastur_density(1.0, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("gaussian one-cut curve is the semicircle") {
  auto curve = solve_one_cut(Potential<double>::gaussian());
  CHECK(curve.c == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(curve.gamma == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(curve.edge_a() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(curve.edge_b() == doctest::Approx(-2.0).epsilon(1e-14));
  REQUIRE(curve.M.size() == 1);
  CHECK(curve.M[0] == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(curve.Pbar.size() == 1);
  CHECK(curve.Pbar[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(curve.v[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(curve.v[1] == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 0; i < 20; ++i) {
    double x = -2.0 + 4.0 * (i + 0.5) / 20.0;
    CHECK(one_cut_density(curve, x) == doctest::Approx(semicircle_density(x)).epsilon(1e-13));
  }
  CHECK(one_cut_resolvent(curve, 3.0) == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(one_cut_resolvent(curve, -3.0) == doctest::Approx(-(3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
}

TEST_CASE("tricomi quadrature reproduces the gaussian resolvent") {
  auto V = Potential<double>::gaussian();
  auto w = tricomi_resolvent(V, -2.0, 2.0, 3.0);
  CHECK(w.imag() == 0.0);
  CHECK(w.real() == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  auto wm = tricomi_resolvent(V, -2.0, 2.0, -3.0);
  CHECK(wm.real() == doctest::Approx(-(3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(tricomi_resolvent(V, -2.0, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("random convex potentials satisfy the one-cut invariants") {
  std::mt19937_64 rng(20260816);
  std::uniform_real_distribution<double> small(-0.1, 0.1);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> tk;
    if (trial % 2 == 0)
      tk = {small(rng), 1.0, small(rng), 0.05 + 0.05 * std::abs(small(rng))};
    else
      tk = {small(rng), 1.0, small(rng), small(rng) * 0.2, small(rng) * 0.1, 0.04 + 0.04 * std::abs(small(rng))};
    Potential<double> V(tk);
    auto curve = solve_one_cut(V);

    CHECK(std::abs(curve.v[0]) < 1e-12);
    CHECK(curve.v[1] * curve.gamma == doctest::Approx(1.0).epsilon(1e-12));

    double mass = cut_integral([&](double x) { return one_cut_density(curve, x); }, curve.edge_b(), curve.edge_a());
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

    for (double x : {curve.edge_a() + 0.5, curve.edge_b() - 0.7}) {
      double direct = one_cut_resolvent(curve, x);
      CHECK(tricomi_resolvent(V, curve.edge_b(), curve.edge_a(), x).real() == doctest::Approx(direct).epsilon(1e-9));
      double quad = cut_integral([&](double y) { return one_cut_density(curve, y) / (x - y); }, curve.edge_b(), curve.edge_a());
      CHECK(quad == doctest::Approx(direct).epsilon(1e-9));
    }

    double xfar = 80.0;
    CHECK(xfar * one_cut_resolvent(curve, xfar) == doctest::Approx(1.0).epsilon(1e-3));

    // P̄ has exact degree 2(d−1); float mode leaves only rounding dust above.
    double maxc = 0.0;
    for (double p : curve.Pbar) maxc = std::max(maxc, std::abs(p));
    for (size_t i = 2 * static_cast<size_t>(V.degree_vprime() - 1) + 1; i < curve.Pbar.size(); ++i)
      CHECK(std::abs(curve.Pbar[i]) < 1e-10 * maxc);
  }
}

TEST_CASE("double-well quartic: one-cut solution past the transition") {
  auto curve = solve_one_cut(paper_quartic(-0.5));
  double g2 = (1.0 + std::sqrt(7.0)) / 6.0;
  CHECK(curve.c == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(curve.gamma * curve.gamma == doctest::Approx(g2).epsilon(1e-12));
  REQUIRE(curve.M.size() == 3);
  CHECK(curve.M[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(curve.M[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(curve.M[0] == doctest::Approx(-2.0 + 4.0 * g2).epsilon(1e-12));
  double mass = cut_integral([&](double x) { return one_cut_density(curve, x); }, curve.edge_b(), curve.edge_a());
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("one-cut/two-cut transition bracketing at t = -1/4") {
  CHECK_THROWS_AS(solve_one_cut(paper_quartic(-0.25 + 1e-3)), NegativeDensityError);
  auto curve = solve_one_cut(paper_quartic(-0.25 - 1e-3));
  double t = -0.25 - 1e-3;
  double g2 = (1.0 + std::sqrt(1.0 - 12.0 * t)) / 6.0;
  CHECK(curve.gamma * curve.gamma == doctest::Approx(g2).epsilon(1e-11));
  CHECK(curve.edge_a() == doctest::Approx(2.0 * std::sqrt(g2)).epsilon(1e-11));
}

TEST_CASE("two-cut quartic closed form") {
  double t = -3.0 / 16.0;
  auto cut = quartic_two_cut(t);
  CHECK(cut.a * cut.a == doctest::Approx(1.0 + 2.0 * std::sqrt(-t)).epsilon(1e-15));
  CHECK(cut.b * cut.b == doctest::Approx(1.0 - 2.0 * std::sqrt(-t)).epsilon(1e-15));
  CHECK(cut.density(0.0) == 0.0);
  CHECK(cut.density(cut.a + 0.1) == 0.0);
  CHECK(cut.density(0.5 * (cut.a + cut.b)) > 0.0);
  CHECK(cut.density(-1.0) == doctest::Approx(cut.density(1.0)).epsilon(1e-15));

  double mass = 2.0 * cut_integral([&](double x) { return cut.density(x); }, cut.b, cut.a);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  auto quad_resolvent = [&](double x) {
    auto f = [&](double y) { return cut.density(y) * (1.0 / (x - y) + 1.0 / (x + y)); };
    return cut_integral(f, cut.b, cut.a, 1 << 16);
  };
  for (double x : {3.0, 1.7, 0.1, -0.2}) {
    if (std::abs(x) > cut.b && std::abs(x) < cut.a) continue;
    CHECK(cut.resolvent(x) == doctest::Approx(quad_resolvent(x)).epsilon(1e-7));
  }
  CHECK(cut.resolvent(0.1) < 0.0);
  CHECK(cut.resolvent(-0.1) > 0.0);
  CHECK(cut.resolvent(1.7) == doctest::Approx(-cut.resolvent(-1.7)).epsilon(1e-13));
  CHECK_THROWS_AS(quartic_two_cut(-0.3), std::invalid_argument);
  CHECK_THROWS_AS(quartic_two_cut(0.0), std::invalid_argument);
  CHECK_THROWS_AS(cut.resolvent(1.0), std::invalid_argument);
}

TEST_CASE("two-point function: joukowsky route equals the algebraic form") {
  auto gaussian = solve_one_cut(Potential<double>::gaussian());
  auto algebraic = [](const OneCutCurve<double>& c, double x1, double x2) {
    double a = c.edge_a(), b = c.edge_b();
    double q2 = x1 * x2 - 0.5 * (a + b) * (x1 + x2) + a * b;
    double s1 = std::sqrt((x1 - a) * (x1 - b)) * (x1 >= c.c ? 1.0 : -1.0);
    double s2 = std::sqrt((x2 - a) * (x2 - b)) * (x2 >= c.c ? 1.0 : -1.0);
    return -0.5 / ((x1 - x2) * (x1 - x2)) * (1.0 - q2 / (s1 * s2));
  };
  CHECK(two_point_one_cut(gaussian, 3.0, 4.0) == doctest::Approx(algebraic(gaussian, 3.0, 4.0)).epsilon(1e-13));
  CHECK(two_point_one_cut(gaussian, 3.0, 4.0) == doctest::Approx(two_point_one_cut(gaussian, 4.0, 3.0)).epsilon(1e-13));
  CHECK(two_point_one_cut(gaussian, -3.0, 4.0) == doctest::Approx(algebraic(gaussian, -3.0, 4.0)).epsilon(1e-13));

  auto quartic = solve_one_cut(paper_quartic(-0.5));
  for (auto [x1, x2] : {std::pair{2.0, 2.5}, std::pair{-2.1, 3.0}, std::pair{1.7, -1.8}}) {
    CHECK(two_point_one_cut(quartic, x1, x2) == doctest::Approx(algebraic(quartic, x1, x2)).epsilon(1e-12));
    CHECK(two_point_one_cut(quartic, x1, x2) == doctest::Approx(two_point_one_cut(quartic, x2, x1)).epsilon(1e-12));
  }
}

TEST_CASE("formal one-cut solve: quartic gamma-squared series") {
  auto curve = solve_one_cut(formal_quartic(3));
  FormalScalar u = curve.gamma * curve.gamma;
  CHECK(u.coeff(0) == Rational(1));
  CHECK(u.coeff(1) == Rational(3));
  CHECK(u.coeff(2) == Rational(18));
  CHECK(u.coeff(3) == Rational(135));

  CHECK(curve.c.is_zero());
  CHECK(curve.v[0].is_zero());
  CHECK(curve.v[1] * curve.gamma == FormalScalar::constant_series(Rational(1), 3));
  FormalScalar t = FormalScalar::t(3);
  CHECK(curve.v[2].is_zero());
  CHECK(curve.v[3] == -t * curve.gamma.pow(3));

  REQUIRE(curve.M.size() == 3);
  CHECK(curve.M[2] == -t);
  CHECK(curve.M[1].is_zero());
  CHECK(curve.M[0] == FormalScalar::constant_series(Rational(1), 3) - FormalScalar(2L) * t * u);

  // P̄ stays polynomial of degree d−1 with series coefficients.
  CHECK(curve.Pbar.size() <= 5);
}

TEST_CASE("formal one-cut solve rejects non-even input") {
  FormalScalar t = FormalScalar::t(2);
  CHECK_THROWS_AS(solve_one_cut(Potential<FormalScalar>({FormalScalar(1L), FormalScalar(1L), FormalScalar(0L), -t})),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_one_cut(Potential<FormalScalar>({FormalScalar(0L), FormalScalar(1L), FormalScalar(0L), FormalScalar(1L)})),
                  std::invalid_argument);
}
