// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace rmt {

/// Exact rational scalar. All combinatorial and formal-series work runs on
/// this type; doubles appear only at the final evaluation step.
using Rational = mpq_class;

/// n/d in canonical form (mpq_class's two-argument constructor does not
/// reduce on its own, and gmpxx arithmetic assumes canonical operands).
inline Rational make_rational(long n, long d) {
  if (d == 0) throw std::domain_error("make_rational: zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = base;
  bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational out(1);
  while (n > 0) {
    if (n & 1UL) out *= b;
    b *= b;
    n >>= 1UL;
  }
  if (neg) {
    if (out == 0) throw std::domain_error("rational_pow: 0 to a negative power");
    out = Rational(1) / out;
  }
  return out;
}

/// Exact square root when the argument is a perfect rational square.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class rn, rd;
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

inline Rational factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline Rational binomial(unsigned long n, unsigned long k) {
  if (k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace rmt
