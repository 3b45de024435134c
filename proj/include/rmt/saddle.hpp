// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/formal.hpp>
#include <rmt/model.hpp>

#include <complex>
#include <stdexcept>
#include <vector>

namespace rmt {

struct NewtonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeDensityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wigner semicircle (1/2π)√(4−x²) on [−2,2].
double semicircle_density(double x);

/// CDF of the semicircle from −2 to x (clamped), used for unfolding.
double semicircle_cdf(double x);

/// Marchenko-Pastur density for u ≥ 1, edges a_± = σ²(1±√u)², normalized to
/// unit mass: √((a₊−x)(x−a₋))/(2πσ²x). The bare prefactor 1/(2πuσ²) in the
/// source law is proportional only; the recorded normalization constant is u
/// times it.
double marchenko_pastur_density(double x, double u, double sigma2);

namespace poly {

// Dense polynomial helpers over an arbitrary scalar ring, ascending powers.
template <class S>
std::vector<S> mul(const std::vector<S>& a, const std::vector<S>& b) {
  std::vector<S> out(a.size() + b.size() - 1, S(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

template <class S>
S eval(const std::vector<S>& p, const S& x) {
  S acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

template <class S>
std::vector<S> sub(std::vector<S> a, const std::vector<S>& b) {
  if (a.size() < b.size()) a.resize(b.size(), S(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  return a;
}

} // namespace poly

/// One-cut spectral data in Joukowsky coordinates x = c + γ(z + 1/z):
/// center c = (a+b)/2, radius γ = (a−b)/4, resolvent Laurent coefficients
/// ω̄(z) = Σ_k v_k z^{−k}, the moment polynomial M, σ(x) = (x−a)(x−b), and
/// P̄ = ((V')² − M²σ)/4.
template <class S>
struct OneCutCurve {
  S c{0};
  S gamma{0};
  std::vector<S> v;       // v[k] multiplies z^{-k}, k = 0..d
  std::vector<S> vprime;  // coefficient list of V' (ascending)
  std::vector<S> M;       // ascending polynomial coefficients
  std::vector<S> sigma;   // (x−a)(x−b), three coefficients
  std::vector<S> Pbar;

  S edge_a() const { return c + S(2) * gamma; }
  S edge_b() const { return c - S(2) * gamma; }
};

namespace detail {

// Symmetric Laurent coefficients w_0..w_d of V'(c + γ(z + 1/z)); by z ↦ 1/z
// symmetry the negative side mirrors. v_0 = w_0/2, v_k = w_k for k ≥ 1.
template <class S>
std::vector<S> joukowsky_vprime_coeffs(const std::vector<S>& vp, const S& c, const S& gamma) {
  int d = static_cast<int>(vp.size()) - 1;
  int width = 2 * d + 1;
  int mid = d;
  std::vector<S> acc(width, S(0));
  for (int i = d; i >= 0; --i) {
    // acc <- acc * (c + γ z + γ/z) + t_{i+1}
    std::vector<S> next(width, S(0));
    for (int e = -d; e <= d; ++e) {
      const S& cur = acc[mid + e];
      next[mid + e] = next[mid + e] + c * cur;
      if (e + 1 <= d) next[mid + e + 1] = next[mid + e + 1] + gamma * cur;
      if (e - 1 >= -d) next[mid + e - 1] = next[mid + e - 1] + gamma * cur;
    }
    next[mid] = next[mid] + vp[static_cast<size_t>(i)];
    acc = std::move(next);
  }
  std::vector<S> w(static_cast<size_t>(d) + 1, S(0));
  for (int k = 0; k <= d; ++k) w[static_cast<size_t>(k)] = acc[mid + k];
  return w;
}

// Converts the symmetric Laurent polynomial e_0 + Σ_{j≥1} e_j (z^j + z^{−j})
// into a polynomial in x using z^j + z^{−j} = P_j(x), P_0 = 2, P_1 = (x−c)/γ,
// P_{j+1} = P_1 P_j − P_{j−1}.
template <class S>
std::vector<S> symmetric_laurent_to_poly(const std::vector<S>& e, const S& c, const S& gamma) {
  std::vector<S> out{e[0]};
  if (e.size() == 1) return out;
  S ginv = S(1) / gamma;
  std::vector<S> P_prev{S(2)};
  std::vector<S> P_cur{-c * ginv, ginv};
  std::vector<S> P1 = P_cur;
  for (size_t j = 1; j < e.size(); ++j) {
    std::vector<S> term = P_cur;
    for (auto& t : term) t = t * e[j];
    if (term.size() > out.size()) out.resize(term.size(), S(0));
    for (size_t i = 0; i < term.size(); ++i) out[i] = out[i] + term[i];
    std::vector<S> P_next = poly::sub(poly::mul(P1, P_cur), P_prev);
    P_prev = std::move(P_cur);
    P_cur = std::move(P_next);
  }
  return out;
}

template <class S>
bool is_zero_coeff(const S& v) {
  if constexpr (std::is_same_v<S, FormalScalar>)
    return v.is_zero();
  else
    return v == S(0);
}

// Assembles the full curve once (c, γ) are known.
template <class S>
OneCutCurve<S> build_one_cut(const std::vector<S>& vp, const S& c, const S& gamma) {
  int d = static_cast<int>(vp.size()) - 1;
  OneCutCurve<S> curve;
  curve.c = c;
  curve.gamma = gamma;
  curve.vprime = vp;
  std::vector<S> w = joukowsky_vprime_coeffs(vp, c, gamma);
  curve.v.assign(static_cast<size_t>(d) + 1, S(0));
  curve.v[0] = w[0] / S(2);
  for (int k = 1; k <= d; ++k) curve.v[static_cast<size_t>(k)] = w[static_cast<size_t>(k)];

  // M(x(z)) = (1/γ) Σ_k v_k (z^{k−1} + z^{k−3} + … + z^{1−k}); collect
  // symmetric Laurent coefficients e_j then change basis to x.
  std::vector<S> e(static_cast<size_t>(d), S(0));
  for (int k = 1; k <= d; ++k)
    for (int j = k - 1; j >= 0; j -= 2) e[static_cast<size_t>(j)] = e[static_cast<size_t>(j)] + curve.v[static_cast<size_t>(k)];
  curve.M = symmetric_laurent_to_poly(e, c, gamma);
  for (auto& coeff : curve.M) coeff = coeff / gamma;

  S a = curve.edge_a(), b = curve.edge_b();
  curve.sigma = {a * b, -(a + b), S(1)};

  // P̄ = ((V')² − M²σ)/4, exact in every ring.
  std::vector<S> num = poly::sub(poly::mul(vp, vp), poly::mul(poly::mul(curve.M, curve.M), curve.sigma));
  for (auto& coeff : num) coeff = coeff / S(4);
  while (num.size() > 1 && is_zero_coeff(num.back())) num.pop_back();
  curve.Pbar = std::move(num);
  return curve;
}

} // namespace detail

/// Float-mode one-cut solver: Newton on (c, γ) for v_0 = 0, v_1 = 1/γ from
/// the initial guess (0,1) with step halving, then a positivity scan of the
/// density on a 1024-point Chebyshev grid of the cut. Throws NewtonError or
/// NegativeDensityError (the latter signals a caller fallback to two-cut).
OneCutCurve<double> solve_one_cut(const Potential<double>& V);

/// Formal-mode one-cut solver for even potentials whose t-free part is
/// quadratic: c = 0 by parity and γ² is found order by order with
/// series_newton.
OneCutCurve<FormalScalar> solve_one_cut(const Potential<FormalScalar>& V);

/// Equilibrium density of a float-mode curve: (1/2π) M(x) √((a−x)(x−b)).
double one_cut_density(const OneCutCurve<double>& curve, double x);

/// Physical-sheet Joukowsky coordinate with |z| > 1 for x off the cut.
double joukowsky_z(const OneCutCurve<double>& curve, double x);

/// Resolvent ω̄(x) = Σ_k v_k z(x)^{−k} off the cut.
double one_cut_resolvent(const OneCutCurve<double>& curve, double x);

/// Symmetric two-cut quartic for V = (1/t)(x²/2 − x⁴/4), −1/4 < t < 0:
/// support (−a,−b) ∪ (b,a) with a² = 1 + 2√(−t), b² = 1 − 2√(−t).
struct TwoCutQuartic {
  double t = 0;
  double a = 0;
  double b = 0;

  double density(double x) const;
  double resolvent(double x) const;
};

TwoCutQuartic quartic_two_cut(double t);

/// Tricomi form of the one-cut resolvent for x off the cut [b,a]:
/// ω̄(x) = (√((x−a)(x−b))/2π) ∫_b^a V'(x') dx' / (√((a−x')(x'−b))(x−x')),
/// evaluated with Gauss-Chebyshev quadrature.
std::complex<double> tricomi_resolvent(const Potential<double>& V, double b, double a, double x);

/// Connected two-point function ω̄₂(x1,x2) = −B(z1, 1/z2)/(dx1 dx2) of a
/// one-cut curve, both points off the cut.
double two_point_one_cut(const OneCutCurve<double>& curve, double x1, double x2);

} // namespace rmt
