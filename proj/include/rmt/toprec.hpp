// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/formal.hpp>
#include <rmt/saddle.hpp>

#include <map>
#include <utility>
#include <vector>

namespace rmt {

/// Truncated Laurent series in a local variable u: c[i] is the coefficient of
/// u^(lo+i), and every exponent below lo is exactly zero.
struct LaurentSeries {
  int lo = 0;
  std::vector<FormalScalar> c;

  FormalScalar coeff(int e) const {
    if (e < lo || e - lo >= static_cast<int>(c.size())) return FormalScalar(0L);
    return c[static_cast<size_t>(e - lo)];
  }
};

/// Coefficient of u^{-1}.
FormalScalar residue_at_branch(const LaurentSeries& s);

/// Bergman kernel coefficient: B(z1,z2) = dz1 dz2/(z1-z2)^2. Throws on
/// coincident points.
Rational bergman(const Rational& z1, const Rational& z2);

///// One-cut spectral curve in Joukowsky coordinates x(z) = c + gamma(z + 1/z):
/// branch points at z = +-1, global involution z -> 1/z, and the odd
/// combination w(z) = W_{0,1}(x(z)) - W_{0,1}(x(1/z)) driving the recursion
/// kernel. y = w/2, the orientation in which the free energies computed from
/// omega_{0,1} = y dx carry the same sign as the genus expansion of log Z;
/// the equilibrium density lives on the -y branch. Laurent data is keyed by
/// the power of z.
struct SpectralCurve {
  OneCutCurve<FormalScalar> base;
  std::map<int, FormalScalar> y;
  std::map<int, FormalScalar> w;
};

/// Builds the curve data from one-cut output, checking that the branch points
/// are simple: w(+-1) = 0 identically and w'(+-1) invertible at order 0.
SpectralCurve spectral_curve(const OneCutCurve<FormalScalar>& base);

/// V = x^2/2: c = 0, gamma = 1, exact rational coefficients.
SpectralCurve gaussian_curve();

/// V = x^2/2 - (t/4)x^4 with t a formal series truncated at t^order;
/// gamma^2 = 1 + 3t gamma^4 solved in the series ring.
SpectralCurve quartic_curve(int t_order);

///// omega_{g,n} for 2g-2+n >= 1 as a finite pole expansion: the tensor maps a
/// per-slot list of (k_i, s_i) to the coefficient of prod dz_i/(z_i - s_i)^k_i
/// with s_i in {+1,-1} and k_i >= 2.
struct CorrelatorForm {
  using Terms = std::map<std::vector<std::pair<int, int>>, FormalScalar>;

  int g = 0;
  int n = 0;
  Terms terms;
};

/// Evaluates the stripped coefficient function of the form at given points
/// (the prod dz_i weight is the caller's bookkeeping).
FormalScalar correlator_value(const CorrelatorForm& form, const std::vector<Rational>& z);

/// One-cut topological recursion by exact residue calculus at z = +-1.
/// Residues run over local Laurent series of the given working depth; a depth
/// too small for the pole orders at hand retries doubled up to a hard cap.
class TopRecursion {
 public:
  explicit TopRecursion(SpectralCurve curve, int depth = 32);

  const SpectralCurve& curve() const { return curve_; }

  /// omega_{g,n}, memoized; requires 2g-2+n >= 1. Checks pole caps
  /// (order <= 6g+2n-4), vanishing branch-point residues, and full slot
  /// symmetry, throwing on any violation.
  const CorrelatorForm& omega(int g, int n);

  /// F_g = (1/(2-2g)) sum_a Res_{z->a} omega_{g,1} Phi for g >= 2, with Phi
  /// the local series primitive of y dx (constant phi_shift, default 0; the
  /// value is independent of it).
  FormalScalar free_energy(int g, const Rational& phi_shift = Rational(0));

  /// Coefficient of prod x_i^{-mu_i-1} in W_{g,n} = omega_{g,n}/prod dx_i,
  /// expanded on the z -> infinity branch. mu_i >= 0.
  FormalScalar expand_to_W(const CorrelatorForm& form, const std::vector<int>& mu) const;

  /// Coefficient of x^{-mu-1} in W_{0,1} (the mu = 0 coefficient 1/x is
  /// reported like any other).
  FormalScalar w01_coefficient(int mu) const;

  /// Coefficient of x1^{-mu1-1} x2^{-mu2-1} in W_{0,2}, i.e. in
  /// -B(z1, 1/z2)/(dx1 dx2), the double-pole subtraction already absorbed.
  FormalScalar w02_coefficient(int mu1, int mu2) const;

  /// Recursion kernel K_a(z1, z) = (1/2)(1/(z1-z) - 1/(z1-1/z)) / (w(z)x'(z))
  /// expanded at branch a in u = z - a, the rational z1 substituted exactly;
  /// count coefficients from the leading order on.
  LaurentSeries kernel_series(int branch, const Rational& z1, int count) const;

 private:
  SpectralCurve curve_;
  int depth_;
  std::map<std::pair<int, int>, CorrelatorForm> memo_;

  CorrelatorForm compute_omega(int g, int n, int depth);
};

} // namespace rmt
