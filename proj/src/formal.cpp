// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/formal.hpp>

#include <algorithm>
#include <sstream>

namespace rmt {

FormalScalar FormalScalar::t(int order) {
  if (order < 1) throw std::domain_error("FormalScalar::t: order must be >= 1");
  std::vector<Rational> c(static_cast<size_t>(order) + 1, Rational(0));
  c[1] = 1;
  return series(std::move(c));
}

FormalScalar FormalScalar::series(std::vector<Rational> c) {
  if (c.empty()) throw std::domain_error("FormalScalar::series: empty coefficient list");
  FormalScalar s;
  s.coeffs_ = std::move(c);
  s.series_ = true;
  return s;
}

FormalScalar FormalScalar::constant_series(const Rational& v, int order) {
  if (order < 0) throw std::domain_error("FormalScalar::constant_series: negative order");
  std::vector<Rational> c(static_cast<size_t>(order) + 1, Rational(0));
  c[0] = v;
  return series(std::move(c));
}

void FormalScalar::align(FormalScalar& a, FormalScalar& b) {
  if (!a.series_ && !b.series_) return;
  if (!a.series_) a = constant_series(a.coeffs_[0], b.order());
  if (!b.series_) b = constant_series(b.coeffs_[0], a.order());
  int p = std::min(a.order(), b.order());
  a.coeffs_.resize(static_cast<size_t>(p) + 1);
  b.coeffs_.resize(static_cast<size_t>(p) + 1);
}

FormalScalar FormalScalar::operator-() const {
  FormalScalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

FormalScalar& FormalScalar::operator+=(const FormalScalar& o) {
  FormalScalar b = o;
  align(*this, b);
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += b.coeffs_[k];
  return *this;
}

FormalScalar& FormalScalar::operator-=(const FormalScalar& o) {
  FormalScalar b = o;
  align(*this, b);
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= b.coeffs_[k];
  return *this;
}

FormalScalar& FormalScalar::operator*=(const FormalScalar& o) {
  FormalScalar b = o;
  align(*this, b);
  std::vector<Rational> out(coeffs_.size(), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; i + j < out.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      out[i + j] += coeffs_[i] * b.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

FormalScalar& FormalScalar::operator/=(const FormalScalar& o) {
  *this *= o.inverse();
  return *this;
}

bool operator==(const FormalScalar& a, const FormalScalar& b) {
  if (!a.series_ && !b.series_) return a.coeffs_[0] == b.coeffs_[0];
  int p = (a.series_ && b.series_) ? std::min(a.order(), b.order())
                                   : std::max(a.order(), b.order());
  for (int k = 0; k <= p; ++k)
    if (a.coeff(k) != b.coeff(k)) return false;
  return true;
}

FormalScalar FormalScalar::inverse() const {
  if (!series_) {
    if (coeffs_[0] == 0) throw std::domain_error("FormalScalar: inverse of zero");
    return FormalScalar(Rational(1) / coeffs_[0]);
  }
  if (coeffs_[0] == 0)
    throw std::domain_error("FormalScalar: series inverse needs c_0 != 0");
  std::vector<Rational> b(coeffs_.size(), Rational(0));
  b[0] = Rational(1) / coeffs_[0];
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    Rational acc(0);
    for (size_t j = 1; j <= k; ++j) acc += coeffs_[j] * b[k - j];
    b[k] = -acc * b[0];
  }
  return series(std::move(b));
}

FormalScalar FormalScalar::sqrt() const {
  if (!series_) {
    auto r = rational_sqrt(coeffs_[0]);
    if (!r) throw std::domain_error("FormalScalar: rational sqrt of a non-square");
    return FormalScalar(*r);
  }
  auto r0 = rational_sqrt(coeffs_[0]);
  if (!r0 || *r0 == 0)
    throw std::domain_error("FormalScalar: series sqrt needs c_0 a positive perfect square");
  std::vector<Rational> s(coeffs_.size(), Rational(0));
  s[0] = *r0;
  Rational half_inv = Rational(1) / (2 * s[0]);
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    Rational acc = coeffs_[k];
    for (size_t j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = acc * half_inv;
  }
  return series(std::move(s));
}

FormalScalar FormalScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FormalScalar out(1L), base = *this;
  if (series_) out = constant_series(Rational(1), order());
  unsigned long n = static_cast<unsigned long>(e);
  while (n > 0) {
    if (n & 1UL) out *= base;
    base *= base;
    n >>= 1UL;
  }
  return out;
}

std::string FormalScalar::to_string() const {
  if (!series_) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0 && !(first && k + 1 == coeffs_.size())) continue;
    if (!first) os << " + ";
    os << coeffs_[k].get_str();
    if (k >= 1) os << "*t";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  if (first) os << "0";
  os << " + O(t^" << coeffs_.size() << ")";
  return os.str();
}

FormalScalar series_newton(const std::function<FormalDual(const FormalDual&)>& F,
                           const Rational& u0, int order) {
  FormalScalar u = FormalScalar::constant_series(u0, order);
  FormalScalar one(1L);
  for (int iter = 0; iter < 64; ++iter) {
    FormalDual r = F(FormalDual(u, one));
    if (r.v.is_zero()) return u;
    FormalScalar step = r.v * r.d.inverse();
    if (step.is_zero())
      throw std::runtime_error("series_newton: stalled with nonzero residual");
    u -= step;
  }
  FormalDual r = F(FormalDual(u, one));
  if (r.v.is_zero()) return u;
  throw std::runtime_error("series_newton: no convergence after 64 iterations");
}

} // namespace rmt
