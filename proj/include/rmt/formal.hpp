// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/rational.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmt {

/// Exact scalar for formal computations: either a rational number or a
/// truncated power series c_0 + c_1 t + ... + c_p t^p in one coupling t with
/// rational coefficients. Arithmetic never rounds; combining two series
/// truncates to the smaller order, and rationals act as order-infinity
/// constants.
class FormalScalar {
 public:
  FormalScalar() : coeffs_{Rational(0)}, series_(false) {}
  FormalScalar(const Rational& v) : coeffs_{v}, series_(false) {}
  FormalScalar(long v) : coeffs_{Rational(v)}, series_(false) {}

  /// The coupling t itself, truncated at t^order.
  static FormalScalar t(int order);

  /// Series with coefficients c[0..p]; order p = c.size()-1.
  static FormalScalar series(std::vector<Rational> c);

  /// The rational v viewed as a series truncated at t^order.
  static FormalScalar constant_series(const Rational& v, int order);

  bool is_series() const { return series_; }

  /// Truncation order p for series; rationals report -1.
  int order() const { return series_ ? static_cast<int>(coeffs_.size()) - 1 : -1; }

  const Rational& rational_value() const {
    if (series_) throw std::domain_error("FormalScalar: series has no rational value");
    return coeffs_[0];
  }

  /// Coefficient of t^k (0 beyond the stored range; rationals are constants).
  Rational coeff(int k) const {
    if (k < 0) throw std::domain_error("FormalScalar: negative coefficient index");
    if (!series_) return k == 0 ? coeffs_[0] : Rational(0);
    return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Rational(0);
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  FormalScalar operator-() const;
  FormalScalar& operator+=(const FormalScalar& o);
  FormalScalar& operator-=(const FormalScalar& o);
  FormalScalar& operator*=(const FormalScalar& o);
  FormalScalar& operator/=(const FormalScalar& o);

  friend FormalScalar operator+(FormalScalar a, const FormalScalar& b) { return a += b; }
  friend FormalScalar operator-(FormalScalar a, const FormalScalar& b) { return a -= b; }
  friend FormalScalar operator*(FormalScalar a, const FormalScalar& b) { return a *= b; }
  friend FormalScalar operator/(FormalScalar a, const FormalScalar& b) { return a /= b; }

  friend bool operator==(const FormalScalar& a, const FormalScalar& b);
  friend bool operator!=(const FormalScalar& a, const FormalScalar& b) { return !(a == b); }

  /// Multiplicative inverse. Rational: nonzero; series: c_0 != 0.
  FormalScalar inverse() const;

  /// Square root. Rational: perfect square; series: c_0 a positive perfect
  /// square, remaining coefficients from the exact Newton recurrence.
  FormalScalar sqrt() const;

  FormalScalar pow(long e) const;

  std::string to_string() const;

 private:
  // Rational is stored as coeffs_[0] with series_ == false.
  std::vector<Rational> coeffs_;
  bool series_;

  static void align(FormalScalar& a, FormalScalar& b);
};

/// Dual number over FormalScalar for forward-mode differentiation inside
/// series_newton. Functions passed to series_newton must be generic enough to
/// accept this type.
struct FormalDual {
  FormalScalar v;
  FormalScalar d;

  FormalDual(const FormalScalar& value) : v(value), d(0L) {}
  FormalDual(const FormalScalar& value, const FormalScalar& deriv) : v(value), d(deriv) {}
  FormalDual(long value) : v(value), d(0L) {}

  friend FormalDual operator+(const FormalDual& a, const FormalDual& b) {
    return {a.v + b.v, a.d + b.d};
  }
  friend FormalDual operator-(const FormalDual& a, const FormalDual& b) {
    return {a.v - b.v, a.d - b.d};
  }
  friend FormalDual operator*(const FormalDual& a, const FormalDual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend FormalDual operator/(const FormalDual& a, const FormalDual& b) {
    FormalScalar binv = b.v.inverse();
    FormalScalar q = a.v * binv;
    return {q, (a.d - q * b.d) * binv};
  }
  FormalDual operator-() const { return {-v, -d}; }
};

/// Solves F(u) = 0 in the truncated series ring by Newton iteration with
/// dual-number derivatives, starting from the rational seed u0. Exact in every
/// coefficient; throws on non-convergence or a non-invertible derivative.
FormalScalar series_newton(const std::function<FormalDual(const FormalDual&)>& F,
                           const Rational& u0, int order);

} // namespace rmt
