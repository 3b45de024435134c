// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/model.hpp>
#include <rmt/quadrature.hpp>
#include <rmt/real.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace rmt {

struct OrthoError : std::runtime_error {
  int index;
  OrthoError(const std::string& msg, int idx) : std::runtime_error(msg), index(idx) {}
};

/// Weight moments M_k = ∫ λ^k e^{−V(λ)} dλ on the real line.
struct MomentTable {
  std::vector<Real> M;
  Potential<double> V{std::vector<double>{0.0, 1.0}};
  bool even = false;
  int levels_used = 0;

  int count() const { return static_cast<int>(M.size()) - 1; }
};

/// Three-term recurrence data p_{k+1} = (λ−S_k)p_k − γ_k² p_{k−1} with norms
/// h_k = ⟨p_k|p_k⟩; gamma[0] is an unused placeholder.
struct RecurrenceTable {
  std::vector<Real> gamma;
  std::vector<Real> S;
  std::vector<Real> h;
  Potential<double> V{std::vector<double>{0.0, 1.0}};

  int depth() const { return static_cast<int>(S.size()) - 1; }
};

/// V evaluated in extended precision from its double coefficient list.
Real eval_potential_real(const Potential<double>& V, const Real& x);

/// Moments up to M_count; Gaussian-type V = cλ²/2 uses the closed form, any
/// other convergent weight goes through double-exponential quadrature. Odd
/// moments of even weights are exactly zero.
MomentTable moments(const Potential<double>& V, int count);

/// Moment-to-recurrence conversion by the Chebyshev algorithm (never by
/// forward iteration of the string equation). Needs moments up to 2K+1;
/// throws OrthoError with the failing index on loss of positivity.
RecurrenceTable recurrence_from_moments(const MomentTable& mt, int K);

/// Residual pair ((V'(Q))_{k,k−1} − k/γ_k, (V'(Q))_{k,k}) from banded powers.
std::pair<Real, Real> string_equation_residual(const Potential<double>& V, const RecurrenceTable& table, int k);

/// Z_N = ∏_{k<N} h_k and its Hankel-determinant form det(M_{i+j})_{i,j<N}.
Real partition_function(const RecurrenceTable& table, int N);
Real hankel_partition(const MomentTable& mt, int N);

/// Monic orthogonal polynomial p_k(λ), three independent evaluators.
Real orthopoly(const RecurrenceTable& table, int k, const Real& lambda);
Real orthopoly_hankel(const MomentTable& mt, int k, const Real& lambda);
Real orthopoly_qminor(const RecurrenceTable& table, int k, const Real& lambda);

/// Wave function ψ_k(λ) = p_k(λ) e^{−V/2} / √h_k by the normalized recurrence.
Real wave_function(const RecurrenceTable& table, int k, const Real& x);

/// Christoffel-Darboux kernel K_N(x,y) = γ_N(ψ_{N−1}(x)ψ_N(y) − ψ_N(x)ψ_{N−1}(y))/(y−x),
/// with the confluent x = y limit taken analytically; cd_kernel_sum is the
/// defining sum Σ_{k<N} ψ_k(x)ψ_k(y).
Real cd_kernel(const RecurrenceTable& table, int N, const Real& x, const Real& y);
Real cd_kernel_sum(const RecurrenceTable& table, int N, const Real& x, const Real& y);

/// k-point correlation R_k(points) = ((N−k)!/N!) det K_N(λ_i,λ_j).
Real joint_density(const RecurrenceTable& table, int N, int k, const std::vector<Real>& points);

/// ⟨Tr M^m⟩ = Tr Π_N Q^m for the N-eigenvalue model; the table must belong to
/// the N-scaled weight e^{−NV}.
Real trace_moment(const RecurrenceTable& table, int N, int m);

/// Weighted Motzkin-path sum from height start to height end in `length`
/// steps: up/down across level k carries γ_k, a flat step at level k carries
/// S_k. Equals (Q^length)_{start,end}.
Real motzkin_paths(const RecurrenceTable& table, int start, int end, int length);

/// n-th convergent p̃_n(x)/p_n(x) of the J-fraction for (1/(x−Q))_{00}, with
/// (p̃_0, p̃_1) = (0, 1).
Real resolvent_continued_fraction(const RecurrenceTable& table, const Real& x, int depth);

namespace banded {

// Q acts tridiagonally on coefficient vectors; gamma[k] couples k−1 and k.
template <class S>
std::vector<S> apply_q(const std::vector<S>& gamma, const std::vector<S>& s, const std::vector<S>& v) {
  size_t n = v.size();
  std::vector<S> w(n, S(0L));
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) w[i] = w[i] + gamma[i] * v[i - 1];
    w[i] = w[i] + s[i] * v[i];
    if (i + 1 < n) w[i] = w[i] + gamma[i + 1] * v[i + 1];
  }
  return w;
}

template <class S>
S q_power_entry(const std::vector<S>& gamma, const std::vector<S>& s, int a, int b, int m) {
  if (a < 0 || b < 0 || a >= static_cast<int>(s.size()) || b >= static_cast<int>(s.size()))
    throw std::out_of_range("q_power_entry: index outside table");
  if (b + m >= static_cast<int>(s.size()))
    throw std::out_of_range("q_power_entry: power escapes table depth");
  std::vector<S> v(s.size(), S(0L));
  v[static_cast<size_t>(b)] = S(1L);
  for (int j = 0; j < m; ++j) v = apply_q(gamma, s, v);
  return v[static_cast<size_t>(a)];
}

template <class S>
S motzkin_sum_rec(const std::vector<S>& gamma, const std::vector<S>& s, int h, int end, int steps) {
  if (steps == 0) return h == end ? S(1L) : S(0L);
  if (h + steps < end || h - steps > end) return S(0L);
  S acc = s[static_cast<size_t>(h)] * motzkin_sum_rec(gamma, s, h, end, steps - 1);
  if (h + 1 < static_cast<int>(s.size()))
    acc = acc + gamma[static_cast<size_t>(h + 1)] * motzkin_sum_rec(gamma, s, h + 1, end, steps - 1);
  if (h > 0) acc = acc + gamma[static_cast<size_t>(h)] * motzkin_sum_rec(gamma, s, h - 1, end, steps - 1);
  return acc;
}

template <class S>
S motzkin_sum(const std::vector<S>& gamma, const std::vector<S>& s, int start, int end, int length) {
  if (start < 0 || end < 0) throw std::invalid_argument("motzkin_sum: negative height");
  return motzkin_sum_rec(gamma, s, start, end, length);
}

} // namespace banded

} // namespace rmt
