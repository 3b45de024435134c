// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/rational.hpp>

#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

namespace rmt {

/// Arbitrary-precision real backed by MPFR. Results of arithmetic carry the
/// thread-local working precision current at the time of the operation.
class Real {
public:
  static mpfr_prec_t& working_bits() {
    thread_local mpfr_prec_t bits = 768;
    return bits;
  }

  Real() { mpfr_init2(v_, working_bits()); mpfr_set_zero(v_, 1); }
  explicit Real(double x) : Real() { mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(long x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
  explicit Real(int x) : Real() { mpfr_set_si(v_, x, MPFR_RNDN); }
  explicit Real(unsigned long x) : Real() { mpfr_set_ui(v_, x, MPFR_RNDN); }
  explicit Real(const Rational& q) : Real() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  std::string str(int digits = 30) const;

  static Real pi() { Real r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

private:
  mpfr_t v_;
};

/// Temporarily changes the thread-local working precision.
class PrecisionGuard {
public:
  explicit PrecisionGuard(mpfr_prec_t bits) : saved_(Real::working_bits()) { Real::working_bits() = bits; }
  ~PrecisionGuard() { Real::working_bits() = saved_; }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
  mpfr_prec_t saved_;
};

inline Real abs(const Real& a) { Real r; mpfr_abs(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real sqrt(const Real& a) { Real r; mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real exp(const Real& a) { Real r; mpfr_exp(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real log(const Real& a) { Real r; mpfr_log(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real sin(const Real& a) { Real r; mpfr_sin(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real cos(const Real& a) { Real r; mpfr_cos(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real sinh(const Real& a) { Real r; mpfr_sinh(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real cosh(const Real& a) { Real r; mpfr_cosh(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real pow(const Real& a, long n) { Real r; mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN); return r; }
inline Real gamma_fn(const Real& a) { Real r; mpfr_gamma(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real ldexp(const Real& a, long e) { Real r; mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN); return r; }

using RealMatrix = std::vector<std::vector<Real>>;

/// Determinant by LU with partial pivoting; the input matrix is destroyed.
Real lu_determinant(RealMatrix& A);

} // namespace rmt
