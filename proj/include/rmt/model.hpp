// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/formal.hpp>
#include <rmt/rational.hpp>

#include <stdexcept>
#include <type_traits>
#include <vector>

namespace rmt {

/// Polynomial potential V(x) = Σ_{k>=1} (t_k/k) x^k, stored by the t_k
/// coefficients; coeffs[i] holds t_{i+1}, so the coefficient list of V' is the
/// stored list itself and deg V' = length - 1. The scalar type selects the
/// ring: double for numerics, Rational for exact work, FormalScalar for
/// series in the coupling t.
template <class S>
struct Potential {
  std::vector<S> tk;

  Potential() = default;
  explicit Potential(std::vector<S> coeffs) : tk(std::move(coeffs)) {
    if (tk.empty()) throw std::domain_error("Potential: empty coefficient list");
    if (is_zero_scalar(tk.back()))
      throw std::domain_error("Potential: leading coefficient must be nonzero");
  }

  /// t_k for k >= 1 (zero beyond the stored degree).
  S t(int k) const {
    if (k < 1) throw std::domain_error("Potential: t_k defined for k >= 1");
    return k <= static_cast<int>(tk.size()) ? tk[k - 1] : S(0);
  }

  int degree_vprime() const { return static_cast<int>(tk.size()) - 1; }

  S eval(const S& x) const {
    // V(x) = x * (t_1/1 + x*(t_2/2 + ...)) by Horner on t_k/k.
    S acc(0);
    for (int i = static_cast<int>(tk.size()) - 1; i >= 0; --i)
      acc = acc * x + tk[i] / S(static_cast<long>(i + 1));
    return acc * x;
  }

  S eval_deriv(const S& x) const {
    S acc(0);
    for (int i = static_cast<int>(tk.size()) - 1; i >= 0; --i)
      acc = acc * x + tk[i];
    return acc;
  }

  static Potential gaussian() { return Potential(std::vector<S>{S(0), S(1)}); }

 private:
  static bool is_zero_scalar(const S& v) {
    if constexpr (std::is_same_v<S, FormalScalar>)
      return v.is_zero();
    else
      return v == S(0);
  }
};

template <class S>
S eval_potential(const Potential<S>& V, const S& x) {
  return V.eval(x);
}

/// Formal quartic V = x²/2 − (t/4)x⁴: t_2 = 1, t_4 = −t, series ring
/// truncated at t^order.
inline Potential<FormalScalar> formal_quartic(int order) {
  FormalScalar zero = FormalScalar::constant_series(Rational(0), order);
  FormalScalar one = FormalScalar::constant_series(Rational(1), order);
  return Potential<FormalScalar>({zero, one, zero, -FormalScalar::t(order)});
}

/// Gaussian β-ensemble label: weight exp(−(Nβ/4) Tr M²) on the symmetry class
/// selected by β ∈ {1,2,4}.
struct EnsembleSpec {
  int beta = 2;
  int N = 1;

  EnsembleSpec() = default;
  EnsembleSpec(int beta_, int N_) : beta(beta_), N(N_) {
    if (beta != 1 && beta != 2 && beta != 4)
      throw std::domain_error("EnsembleSpec: beta must be 1, 2, or 4");
    if (N < 1) throw std::domain_error("EnsembleSpec: N must be positive");
  }
};

} // namespace rmt
