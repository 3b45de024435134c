// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rmt/maps.hpp>
#include <rmt/ortho.hpp>

#include <random>

using namespace rmt;

namespace {

bool close_rel(const Real& a, const Real& b, double tol) {
  Real diff = abs(a - b);
  Real scale = Real(1L) + abs(a) + abs(b);
  return diff < Real(tol) * scale;
}

// Shared quartic fixture: V = (1/t)(λ²/2 − λ⁴/4) at t = −1.
const Potential<double>& quartic_potential() {
  static Potential<double> V({0.0, -1.0, 0.0, 1.0});
  return V;
}

const MomentTable& quartic_moments() {
  static MomentTable mt = moments(quartic_potential(), 27);
  return mt;
}

const RecurrenceTable& quartic_table() {
  static RecurrenceTable table = recurrence_from_moments(quartic_moments(), 13);
  return table;
}

} // namespace

TEST_CASE("gaussian moments in closed form") {
  MomentTable mt = moments(Potential<double>::gaussian(), 8);
  Real s2pi = sqrt(Real(2L) * Real::pi());
  CHECK(close_rel(mt.M[0], s2pi, 1e-30));
  CHECK(close_rel(mt.M[2], s2pi, 1e-30));
  CHECK(close_rel(mt.M[4], Real(3L) * s2pi, 1e-30));
  CHECK(close_rel(mt.M[6], Real(15L) * s2pi, 1e-30));
  CHECK(mt.M[1].is_zero());
  CHECK(mt.M[3].is_zero());
  CHECK(mt.even);

  MomentTable scaled = moments(Potential<double>({0.0, 4.0}), 4);
  CHECK(close_rel(scaled.M[0], sqrt(Real::pi() / Real(2L)), 1e-30));
  CHECK(close_rel(scaled.M[2], scaled.M[0] / Real(4L), 1e-30));
}

TEST_CASE("quartic moments: parity, positivity, quadrature convergence") {
  const MomentTable& mt = quartic_moments();
  CHECK(mt.even);
  CHECK(mt.M[1].is_zero());
  CHECK(mt.M[3].is_zero());
  CHECK(mt.M[0] > Real(0L));
  for (int n = 1; n <= 6; ++n) CHECK(hankel_partition(mt, n) > Real(0L));

  auto weight = [&](const Real& x) { return exp(-eval_potential_real(quartic_potential(), x)); };
  std::vector<Real> coarse = de_integrate_moments(weight, 8, 7, 7);
  std::vector<Real> fine = de_integrate_moments(weight, 8, 8, 8);
  for (int k = 0; k <= 8; k += 2) {
    Real rel = abs(coarse[static_cast<size_t>(k)] - fine[static_cast<size_t>(k)]) / abs(fine[static_cast<size_t>(k)]);
    CHECK(rel < Real(1e-25));
  }
}

TEST_CASE("divergent weights are rejected") {
  CHECK_THROWS_AS(moments(Potential<double>({0.0, 1.0, 0.0, -1.0}), 4), std::invalid_argument);
  CHECK_THROWS_AS(moments(Potential<double>({0.0, 1.0, 1.0}), 4), std::invalid_argument);
}

TEST_CASE("gaussian recurrence: S = 0, gamma = sqrt(k), h_k = sqrt(2pi) k!") {
  MomentTable mt = moments(Potential<double>::gaussian(), 21);
  RecurrenceTable table = recurrence_from_moments(mt, 10);
  Real s2pi = sqrt(Real(2L) * Real::pi());
  Real fact(1L);
  for (int k = 0; k <= 10; ++k) {
    CHECK(table.S[static_cast<size_t>(k)].is_zero());
    if (k >= 1) {
      CHECK(close_rel(table.gamma[static_cast<size_t>(k)] * table.gamma[static_cast<size_t>(k)], Real(static_cast<long>(k)), 1e-25));
      fact *= Real(static_cast<long>(k));
    }
    CHECK(close_rel(table.h[static_cast<size_t>(k)], s2pi * fact, 1e-25));
  }
}

TEST_CASE("quartic string equation: residuals and R_k identity") {
  const RecurrenceTable& table = quartic_table();
  const Potential<double>& V = quartic_potential();
  Real sum(0L);
  for (int k = 1; k <= 10; ++k) {
    auto [off, diag] = string_equation_residual(V, table, k);
    CHECK(abs(off) < Real(1e-8));
    CHECK(abs(diag) < Real(1e-8));
    sum += off;
  }
  CHECK(abs(sum) < Real(1e-8));

  auto R = [&](int k) {
    if (k == 0) return Real(0L);
    return table.gamma[static_cast<size_t>(k)] * table.gamma[static_cast<size_t>(k)];
  };
  double t = -1.0;
  for (int k = 1; k <= 10; ++k) {
    Real lhs = R(k) * (Real(1L) - R(k - 1) - R(k) - R(k + 1));
    CHECK(abs(lhs - Real(t * k)) < Real(1e-8));
  }
}

TEST_CASE("recurrence extraction reports the index losing positivity") {
  MomentTable bad;
  bad.V = Potential<double>::gaussian();
  bad.M = {Real(1L), Real(0L), Real(-1L), Real(0L), Real(1L)};
  try {
    recurrence_from_moments(bad, 1);
    FAIL("expected OrthoError");
  } catch (const OrthoError& e) {
    CHECK(e.index == 1);
  }
}

TEST_CASE("orthopoly: low-degree closed forms and evaluator agreement") {
  MomentTable gm = moments(Potential<double>::gaussian(), 11);
  RecurrenceTable gt = recurrence_from_moments(gm, 5);
  for (double xv : {-1.7, -0.3, 0.0, 0.9, 2.4}) {
    Real x(xv);
    CHECK(close_rel(orthopoly(gt, 1, x), x - gt.S[0], 1e-30));
    CHECK(close_rel(orthopoly(gt, 2, x), x * x - Real(1L), 1e-25));
  }

  const MomentTable& mt = quartic_moments();
  const RecurrenceTable& table = quartic_table();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pt(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    Real x(pt(rng));
    for (int k : {1, 2, 3, 5}) {
      Real a = orthopoly(table, k, x);
      Real b = orthopoly_hankel(mt, k, x);
      Real c = orthopoly_qminor(table, k, x);
      CHECK(close_rel(a, b, 1e-9));
      CHECK(close_rel(a, c, 1e-9));
    }
  }
}

TEST_CASE("heine cross-check: recurrence polynomials are the wick determinants") {
  MomentTable gm = moments(Potential<double>::gaussian(), 11);
  RecurrenceTable gt = recurrence_from_moments(gm, 5);
  for (int k = 1; k <= 4; ++k) {
    for (long num : {-5L, 2L, 7L}) {
      Rational lam(num, 3);
      Real expected(heine_oracle(k, lam));
      CHECK(close_rel(orthopoly(gt, k, Real(lam)), expected, 1e-25));
    }
  }
}

TEST_CASE("partition function: closed forms and hankel agreement") {
  MomentTable gm = moments(Potential<double>::gaussian(), 11);
  RecurrenceTable gt = recurrence_from_moments(gm, 5);
  Real s2pi = sqrt(Real(2L) * Real::pi());
  CHECK(close_rel(partition_function(gt, 1), s2pi, 1e-25));
  CHECK(close_rel(partition_function(gt, 3), Real(2L) * s2pi * s2pi * s2pi, 1e-25));

  std::vector<Potential<double>> random_quartics = {
      Potential<double>({0.0, 0.8, 0.0, 0.4}),
      Potential<double>({0.1, 1.2, 0.05, 0.6}),
      Potential<double>({-0.07, 0.9, 0.1, 0.3}),
  };
  for (const auto& V : random_quartics) {
    MomentTable mt = moments(V, 17);
    RecurrenceTable table = recurrence_from_moments(mt, 8);
    for (int n = 1; n <= 8; ++n) CHECK(close_rel(partition_function(table, n), hankel_partition(mt, n), 1e-10));
  }
}

TEST_CASE("christoffel-darboux kernel") {
  MomentTable gm = moments(Potential<double>::gaussian(), 13);
  RecurrenceTable gt = recurrence_from_moments(gm, 6);

  for (auto [xv, yv] : {std::pair{0.4, -1.1}, std::pair{1.3, 0.2}}) {
    Real x(xv), y(yv);
    Real expected = exp(-(x * x + y * y) / Real(4L)) / sqrt(Real(2L) * Real::pi());
    CHECK(close_rel(cd_kernel(gt, 1, x, y), expected, 1e-25));
  }

  const RecurrenceTable& table = quartic_table();
  for (auto [xv, yv] : {std::pair{0.3, -0.8}, std::pair{1.1, 1.7}, std::pair{-0.2, -0.21}}) {
    Real x(xv), y(yv);
    CHECK(close_rel(cd_kernel(table, 4, x, y), cd_kernel_sum(table, 4, x, y), 1e-9));
  }
  Real xd(0.7);
  CHECK(close_rel(cd_kernel(table, 4, xd, xd), cd_kernel_sum(table, 4, xd, xd), 1e-12));

  {
    PrecisionGuard guard(320);
    auto diag = [&](const Real& x) { return cd_kernel(table, 3, x, x); };
    CHECK(close_rel(de_integrate(diag), Real(3L), 1e-8));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pt(-1.5, 1.5);
    for (int i = 0; i < 4; ++i) {
      Real x(pt(rng)), y(pt(rng));
      auto prod = [&](const Real& t) { return cd_kernel(table, 3, x, t) * cd_kernel(table, 3, t, y); };
      CHECK(close_rel(de_integrate(prod), cd_kernel(table, 3, x, y), 1e-7));
    }
  }
}

TEST_CASE("joint densities") {
  const RecurrenceTable& table = quartic_table();
  int N = 4;
  CHECK(joint_density(table, N, 0, {}) == Real(1L));

  Real x(0.6), y(-0.9);
  Real r1 = joint_density(table, N, 1, {x});
  CHECK(close_rel(r1, cd_kernel(table, N, x, x) / Real(static_cast<long>(N)), 1e-20));

  Real repeated = joint_density(table, N, 2, {x, x});
  CHECK(abs(repeated) < Real(1e-200));

  Real r2 = joint_density(table, N, 2, {x, y});
  CHECK(close_rel(r2, joint_density(table, N, 2, {y, x}), 1e-20));
  Real direct = (cd_kernel(table, N, x, x) * cd_kernel(table, N, y, y) - cd_kernel(table, N, x, y) * cd_kernel(table, N, x, y)) /
                Real(static_cast<long>(N * (N - 1)));
  CHECK(close_rel(r2, direct, 1e-20));
  CHECK_THROWS_AS(joint_density(table, 2, 3, {x, y, x}), OrthoError);
}

TEST_CASE("trace moments against the wick oracle") {
  int N = 5;
  MomentTable mt = moments(Potential<double>({0.0, static_cast<double>(N)}), 45);
  RecurrenceTable table = recurrence_from_moments(mt, 22);
  for (int k = 1; k <= 10; ++k)
    CHECK(close_rel(table.gamma[static_cast<size_t>(k)] * table.gamma[static_cast<size_t>(k)],
                    Real(static_cast<long>(k)) / Real(static_cast<long>(N)), 1e-25));

  CHECK(close_rel(trace_moment(table, N, 2), Real(static_cast<long>(N)), 1e-20));
  CHECK(trace_moment(table, N, 3).is_zero());
  CHECK(close_rel(trace_moment(table, N, 4), Real(2L * N) + Real(1L) / Real(static_cast<long>(N)), 1e-20));

  for (int m : {2, 4, 6, 8}) {
    GenusPolynomial wick = gaussian_moment(TraceWord({m}, 0), false);
    CHECK(close_rel(trace_moment(table, N, m), Real(wick.eval(N)), 1e-20));
  }
  CHECK_THROWS_AS(trace_moment(table, 20, 4), OrthoError);
}

TEST_CASE("motzkin paths equal banded powers") {
  // Asymmetric weight so flat steps matter.
  MomentTable mt = moments(Potential<double>({0.1, 1.0, 0.3, 0.8}), 25);
  RecurrenceTable table = recurrence_from_moments(mt, 12);

  Real s0 = table.S[0], s1 = table.S[1], g1 = table.gamma[1];
  Real four_paths = s0 * s0 * s0 + Real(2L) * g1 * g1 * s0 + g1 * g1 * s1;
  CHECK(close_rel(motzkin_paths(table, 0, 0, 3), four_paths, 1e-25));

  for (int m = 0; m <= 8; ++m)
    for (int a : {0, 1, 2})
      for (int b : {0, 1, 3}) {
        Real path = motzkin_paths(table, a, b, m);
        Real banded = banded::q_power_entry(table.gamma, table.S, a, b, m);
        CHECK(abs(path - banded) < Real(1e-220) * (Real(1L) + abs(banded)));
      }

  // Exact rational mirror of the same identity.
  std::vector<Rational> g = {Rational(0), make_rational(1, 2), make_rational(2, 3), make_rational(3, 5),
                             make_rational(1, 7), make_rational(4, 9), make_rational(5, 11), make_rational(1, 13),
                             make_rational(2, 15), make_rational(3, 17), make_rational(1, 19), make_rational(5, 21)};
  std::vector<Rational> s = {make_rational(1, 4), make_rational(-1, 5), make_rational(1, 6), make_rational(2, 7),
                             make_rational(-2, 9), make_rational(1, 10), make_rational(3, 11), make_rational(-1, 12),
                             make_rational(1, 14), make_rational(2, 17), make_rational(-1, 18), make_rational(1, 23)};
  for (int m = 0; m <= 8; ++m)
    for (int a : {0, 2})
      for (int b : {0, 1}) {
        if (std::max(a, b) + m >= static_cast<int>(s.size())) continue;
        CHECK(banded::motzkin_sum(g, s, a, b, m) == banded::q_power_entry(g, s, a, b, m));
      }

  // Even weight: odd-length closed paths vanish.
  CHECK(motzkin_paths(quartic_table(), 0, 0, 5).is_zero());
}

TEST_CASE("continued-fraction resolvent") {
  const RecurrenceTable& table = quartic_table();
  Real x(2.5);
  CHECK(close_rel(resolvent_continued_fraction(table, x, 1), Real(1L) / (x - table.S[0]), 1e-30));

  // Convergents are the (0,0) resolvent entries of the truncated Jacobi
  // matrix: check against dense determinants via Cramer's rule.
  int n = 12;
  auto dense = [&](int from) {
    size_t dim = static_cast<size_t>(n - from);
    RealMatrix A(dim, std::vector<Real>(dim, Real(0L)));
    for (size_t i = 0; i < dim; ++i) {
      int k = from + static_cast<int>(i);
      A[i][i] = x - table.S[static_cast<size_t>(k)];
      if (i + 1 < dim) {
        A[i][i + 1] = -table.gamma[static_cast<size_t>(k) + 1];
        A[i + 1][i] = -table.gamma[static_cast<size_t>(k) + 1];
      }
    }
    return lu_determinant(A);
  };
  Real full = dense(0), minor = dense(1);
  CHECK(close_rel(resolvent_continued_fraction(table, x, n), minor / full, 1e-20));

  // Effectively compact weight e^{−2λ²} (closed-form table, γ_k² = k/4):
  // monotone approach and a deep-tail plateau.
  RecurrenceTable big;
  big.V = Potential<double>({0.0, 4.0});
  int deep = 302;
  big.gamma.assign(static_cast<size_t>(deep) + 1, Real(0L));
  big.S.assign(static_cast<size_t>(deep) + 1, Real(0L));
  big.h.assign(static_cast<size_t>(deep) + 1, Real(1L));
  for (int k = 1; k <= deep; ++k) big.gamma[static_cast<size_t>(k)] = sqrt(Real(static_cast<long>(k)) / Real(4L));
  Real x6(6L);
  Real limit = resolvent_continued_fraction(big, x6, 300);
  Real prev = resolvent_continued_fraction(big, x6, 2);
  for (int depth = 3; depth <= 20; ++depth) {
    Real cur = resolvent_continued_fraction(big, x6, depth);
    CHECK(cur > prev);
    CHECK(cur < limit);
    prev = cur;
  }
  CHECK(abs(resolvent_continued_fraction(big, x6, 60) - limit) < Real(1e-25));

  MomentTable gm = moments(Potential<double>::gaussian(), 5);
  RecurrenceTable gt = recurrence_from_moments(gm, 2);
  CHECK_THROWS_AS(resolvent_continued_fraction(gt, Real(0L), 1), std::domain_error);
}

TEST_CASE("wave functions are orthonormal under re-integration") {
  const RecurrenceTable& table = quartic_table();
  PrecisionGuard guard(320);
  auto overlap = [&](int j, int k) {
    auto f = [&](const Real& x) { return wave_function(table, j, x) * wave_function(table, k, x); };
    return de_integrate(f);
  };
  CHECK(abs(overlap(2, 3)) < Real(1e-10));
  CHECK(close_rel(overlap(3, 3), Real(1L), 1e-10));
  CHECK(close_rel(overlap(0, 0), Real(1L), 1e-10));
}
