// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/rational.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rmt {

/// A product of marked traces ∏_i Tr M^{μ_i} with q quartic vertices coming
/// from expanding exp(N t Tr M⁴/4).
struct TraceWord {
  std::vector<int> mu;
  int q = 0;

  TraceWord(std::vector<int> mu_, int q_ = 0);

  int half_edges() const;
  int vertex_count() const { return static_cast<int>(mu.size()) + q; }
};

/// Laurent polynomial in N with exact coefficients: Σ_e c_e N^e.
struct GenusPolynomial {
  std::map<int, Rational> coeff;

  Rational at(int e) const {
    auto it = coeff.find(e);
    return it == coeff.end() ? Rational(0) : it->second;
  }
  void add(int e, const Rational& c) {
    auto [it, fresh] = coeff.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coeff.erase(it);
    }
  }
  /// Exact evaluation at integer N (negative exponents allowed, N != 0).
  Rational eval(long n) const;
  bool operator==(const GenusPolynomial& o) const { return coeff == o.coeff; }
  std::string to_string() const;
};

inline constexpr int maps_half_edge_cap = 18;

/// Gaussian expectation of the trace word by brute-force Wick enumeration
/// with the propagator <M_ij M_kl> = (1/N) δ_il δ_jk: every perfect matching
/// of the labeled half-edges contributes N^(faces − edges), faces being the
/// cycles of rotation∘matching. connected=true keeps only matchings whose
/// vertex graph is connected, which yields the cumulant.
GenusPolynomial gaussian_moment(const TraceWord& word, bool connected);

/// Coefficient table of the connected correlator expansion: entry (g, q) is
/// the coefficient of ∏ x_i^{−μ_i−1} t^q in W_{g,n}, where
/// W_n = N^{n−2} <∏ Tr(x_i−M)^{-1}>_c = Σ_g N^{−2g} W_{g,n} and the quartic
/// vertices enter through (N t/4)^q / q!.
std::map<std::pair<int, int>, Rational> connected_correlator_coeffs(
    const std::vector<int>& mu, int t_order);

/// Monic coefficients (ascending powers of λ) of <det(λ−M)> over the k×k
/// Gaussian Hermitian ensemble with weight e^{−Tr M²/2} (N-scaling off), via
/// Newton's identities and unit-propagator Wick moments.
std::vector<Rational> heine_coeffs(int k);

/// <det(λ−M)> evaluated at an exact rational λ.
Rational heine_oracle(int k, const Rational& lambda);

} // namespace rmt
