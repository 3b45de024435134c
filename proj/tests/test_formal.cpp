// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rmt/formal.hpp>
#include <rmt/model.hpp>

#include <random>

using rmt::FormalDual;
using rmt::FormalScalar;
using rmt::Rational;

namespace {

Rational rand_rational(std::mt19937& gen) {
  std::uniform_int_distribution<int> num(-30, 30);
  std::uniform_int_distribution<int> den(1, 12);
  return rmt::make_rational(num(gen), den(gen));
}

FormalScalar rand_series(std::mt19937& gen, int order) {
  std::vector<Rational> c;
  for (int k = 0; k <= order; ++k) c.push_back(rand_rational(gen));
  return FormalScalar::series(c);
}

} // namespace

TEST_CASE("rational arithmetic is exact") {
  FormalScalar a(Rational(3, 7)), b(Rational(2, 5));
  CHECK((a * b + a) == FormalScalar(Rational(3, 5)));
  CHECK(a.inverse() == FormalScalar(Rational(7, 3)));
  CHECK(FormalScalar(Rational(9, 4)).sqrt() == FormalScalar(Rational(3, 2)));
}

TEST_CASE("distributivity holds exactly for random series") {
  std::mt19937 gen(12345);
  for (int trial = 0; trial < 100; ++trial) {
    FormalScalar a = rand_series(gen, 6);
    FormalScalar b = rand_series(gen, 6);
    FormalScalar c = rand_series(gen, 6);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("series inverse and sqrt are exact ring inverses") {
  std::mt19937 gen(777);
  for (int trial = 0; trial < 50; ++trial) {
    FormalScalar a = rand_series(gen, 8);
    if (a.coeff(0) == 0) continue;
    FormalScalar one = FormalScalar::constant_series(Rational(1), 8);
    CHECK(a * a.inverse() == one);
    FormalScalar sq = a * a;
    if (sq.coeff(0) > 0) CHECK(sq.sqrt() * sq.sqrt() == sq);
  }
}

TEST_CASE("rational and series operands mix by promotion") {
  FormalScalar t = FormalScalar::t(4);
  FormalScalar s = FormalScalar(Rational(2)) + t;
  CHECK(s.order() == 4);
  CHECK(s.coeff(0) == Rational(2));
  CHECK(s.coeff(1) == Rational(1));
  CHECK((FormalScalar(Rational(1, 2)) * t).coeff(1) == Rational(1, 2));
}

TEST_CASE("series_newton solves u = 1 + 3t u^2") {
  FormalScalar t3 = FormalScalar(3L) * FormalScalar::t(6);
  auto F = [&](const FormalDual& u) {
    return u - (FormalDual(FormalScalar(1L)) + FormalDual(t3) * u * u);
  };
  FormalScalar u = rmt::series_newton(F, Rational(1), 6);
  CHECK(u.coeff(0) == Rational(1));
  CHECK(u.coeff(1) == Rational(3));
  CHECK(u.coeff(2) == Rational(18));
  CHECK(u.coeff(3) == Rational(135));
  // Back-substitution oracle: the defining equation holds at every order.
  FormalScalar resid = u - (FormalScalar(1L) + t3 * u * u);
  CHECK(resid.is_zero());
}

TEST_CASE("series_newton solves u = t + u^2 from u0 = 0") {
  FormalScalar t = FormalScalar::t(6);
  auto F = [&](const FormalDual& u) { return u - (FormalDual(t) + u * u); };
  FormalScalar u = rmt::series_newton(F, Rational(0), 6);
  CHECK(u.coeff(1) == Rational(1));
  CHECK(u.coeff(2) == Rational(1));
  CHECK(u.coeff(3) == Rational(2));
  CHECK((u - (t + u * u)).is_zero());
}

TEST_CASE("series_newton identity case returns the constant") {
  auto F = [](const FormalDual& u) { return u - FormalDual(FormalScalar(Rational(5, 3))); };
  FormalScalar u = rmt::series_newton(F, Rational(5, 3), 4);
  CHECK(u.coeff(0) == Rational(5, 3));
  for (int k = 1; k <= 4; ++k) CHECK(u.coeff(k) == Rational(0));
}

TEST_CASE("potential evaluation matches Horner expansion") {
  using P = rmt::Potential<Rational>;
  P gauss = P::gaussian();
  CHECK(gauss.eval(Rational(2)) == Rational(2));
  CHECK(gauss.eval_deriv(Rational(2)) == Rational(2));
  CHECK(gauss.eval(Rational(0)) == Rational(0));

  rmt::Potential<FormalScalar> quartic = rmt::formal_quartic(4);
  FormalScalar v1 = quartic.eval(FormalScalar::constant_series(Rational(1), 4));
  CHECK(v1.coeff(0) == Rational(1, 2));
  CHECK(v1.coeff(1) == Rational(-1, 4));
}

TEST_CASE("potential derivative agrees with symbolic differentiation at random points") {
  std::mt19937 gen(99);
  std::vector<Rational> tk = {Rational(1, 3), Rational(2), Rational(0), Rational(-5, 7)};
  rmt::Potential<Rational> V(tk);
  for (int trial = 0; trial < 100; ++trial) {
    Rational x = rand_rational(gen);
    // Symbolic derivative of Σ (t_k/k) x^k is Σ t_k x^{k−1}.
    Rational expect(0);
    for (int k = 1; k <= 4; ++k) expect += tk[k - 1] * rmt::rational_pow(x, k - 1);
    CHECK(V.eval_deriv(x) == expect);
  }
}

TEST_CASE("ensemble spec validates beta and N") {
  CHECK_NOTHROW(rmt::EnsembleSpec(2, 10));
  CHECK_THROWS_AS(rmt::EnsembleSpec(3, 10), std::domain_error);
  CHECK_THROWS_AS(rmt::EnsembleSpec(2, 0), std::domain_error);
}
