// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/ortho.hpp>

#include <algorithm>
#include <cmath>

namespace rmt {

namespace {

bool potential_is_even(const Potential<double>& V) {
  for (size_t i = 0; i < V.tk.size(); i += 2)
    if (V.tk[i] != 0.0) return false;
  return true;
}

// ψ_0..ψ_N and their derivatives at x in one pass.
struct WaveColumn {
  std::vector<Real> psi;
  std::vector<Real> dpsi;
};

WaveColumn wave_column(const RecurrenceTable& table, int N, const Real& x) {
  if (N > table.depth()) throw OrthoError("wave_column: depth exceeded", N);
  WaveColumn col;
  col.psi.reserve(static_cast<size_t>(N) + 1);
  col.dpsi.reserve(static_cast<size_t>(N) + 1);

  Real vhalf = eval_potential_real(table.V, x) / Real(2L);
  Real weight = exp(-vhalf);
  std::vector<double> dv(table.V.tk);
  Real dvhalf(0L);
  for (size_t i = dv.size(); i-- > 0;) dvhalf = dvhalf * x + Real(dv[i]);
  dvhalf /= Real(2L);

  // p_k and p'_k by the monic recurrence, then ψ_k = p_k w / √h_k with
  // ψ'_k = (p'_k − p_k V'/2) w / √h_k.
  Real pm1(0L), p0(1L), dpm1(0L), dp0(0L);
  for (int k = 0; k <= N; ++k) {
    Real shk = sqrt(table.h[static_cast<size_t>(k)]);
    col.psi.push_back(p0 * weight / shk);
    col.dpsi.push_back((dp0 - p0 * dvhalf) * weight / shk);
    if (k == N) break;
    Real g2 = table.gamma[static_cast<size_t>(k)] * table.gamma[static_cast<size_t>(k)];
    Real p1 = (x - table.S[static_cast<size_t>(k)]) * p0 - g2 * pm1;
    Real dp1 = p0 + (x - table.S[static_cast<size_t>(k)]) * dp0 - g2 * dpm1;
    pm1 = p0;
    p0 = p1;
    dpm1 = dp0;
    dp0 = dp1;
  }
  return col;
}

} // namespace

Real eval_potential_real(const Potential<double>& V, const Real& x) {
  Real acc(0L);
  for (size_t i = V.tk.size(); i-- > 0;) acc = acc * x + Real(V.tk[i]) / Real(static_cast<long>(i + 1));
  return acc * x;
}

MomentTable moments(const Potential<double>& V, int count) {
  if (count < 0) throw std::invalid_argument("moments: count < 0");
  int d = V.degree_vprime();
  if (d < 1 || d % 2 == 0 || V.tk.back() <= 0.0)
    throw std::invalid_argument("moments: divergent weight (need even degree, positive leading coefficient)");

  MomentTable mt;
  mt.V = V;
  mt.even = potential_is_even(V);
  mt.M.assign(static_cast<size_t>(count) + 1, Real(0L));

  if (d == 1 && V.tk[0] == 0.0) {
    // Gaussian weight e^{−cλ²/2}: M_{2k} = (2k−1)!! c^{−k} √(2π/c).
    Real c(V.tk[1]);
    Real m0 = sqrt(Real(2L) * Real::pi() / c);
    mt.M[0] = m0;
    for (int k = 2; k <= count; k += 2) mt.M[static_cast<size_t>(k)] = mt.M[static_cast<size_t>(k - 2)] * Real(static_cast<long>(k - 1)) / c;
    mt.levels_used = 0;
    return mt;
  }

  auto weight = [&](const Real& x) { return exp(-eval_potential_real(V, x)); };
  mt.M = de_integrate_moments(weight, count, 14, 4, &mt.levels_used);
  if (mt.even)
    for (int k = 1; k <= count; k += 2) mt.M[static_cast<size_t>(k)] = Real(0L);
  return mt;
}

RecurrenceTable recurrence_from_moments(const MomentTable& mt, int K) {
  if (2 * K + 1 > mt.count()) throw OrthoError("recurrence_from_moments: need moments up to 2K+1", K);
  RecurrenceTable table;
  table.V = mt.V;
  table.gamma.assign(static_cast<size_t>(K) + 1, Real(0L));
  table.S.assign(static_cast<size_t>(K) + 1, Real(0L));
  table.h.assign(static_cast<size_t>(K) + 1, Real(0L));

  // Chebyshev algorithm: σ_{k,l} = ⟨p_k, λ^l⟩ from two rolling rows.
  int width = 2 * K + 2;
  std::vector<Real> prev2(static_cast<size_t>(width), Real(0L));
  std::vector<Real> prev(mt.M.begin(), mt.M.begin() + width);
  if (!(prev[0] > Real(0L))) throw OrthoError("recurrence_from_moments: M_0 not positive", 0);
  Real alpha = prev[1] / prev[0];
  Real beta = prev[0];
  table.S[0] = alpha;
  table.h[0] = prev[0];
  for (int k = 1; k <= K; ++k) {
    std::vector<Real> cur(static_cast<size_t>(width), Real(0L));
    for (int l = k; l <= 2 * K + 1 - k; ++l)
      cur[static_cast<size_t>(l)] = prev[static_cast<size_t>(l) + 1] - alpha * prev[static_cast<size_t>(l)] -
                                    beta * prev2[static_cast<size_t>(l)];
    Real hk = cur[static_cast<size_t>(k)];
    if (!(hk > Real(0L))) throw OrthoError("recurrence_from_moments: positivity lost", k);
    beta = hk / prev[static_cast<size_t>(k) - 1];
    alpha = cur[static_cast<size_t>(k) + 1] / hk - prev[static_cast<size_t>(k)] / prev[static_cast<size_t>(k) - 1];
    table.gamma[static_cast<size_t>(k)] = sqrt(beta);
    table.h[static_cast<size_t>(k)] = hk;
    table.S[static_cast<size_t>(k)] = alpha;
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
  if (mt.even)
    for (auto& s : table.S) s = Real(0L);
  return table;
}

std::pair<Real, Real> string_equation_residual(const Potential<double>& V, const RecurrenceTable& table, int k) {
  int d = V.degree_vprime();
  if (k < 1 || k + d > table.depth()) throw OrthoError("string_equation_residual: insufficient table depth", k);
  size_t n = table.S.size();
  auto accumulate = [&](int col, int row) {
    std::vector<Real> v(n, Real(0L));
    v[static_cast<size_t>(col)] = Real(1L);
    Real acc = Real(V.tk[0]) * v[static_cast<size_t>(row)];
    for (int j = 1; j <= d; ++j) {
      v = banded::apply_q(table.gamma, table.S, v);
      acc += Real(V.tk[static_cast<size_t>(j)]) * v[static_cast<size_t>(row)];
    }
    return acc;
  };
  Real off = accumulate(k - 1, k) - Real(static_cast<long>(k)) / table.gamma[static_cast<size_t>(k)];
  Real diag = accumulate(k, k);
  return {off, diag};
}

Real partition_function(const RecurrenceTable& table, int N) {
  if (N < 1 || N - 1 > table.depth()) throw OrthoError("partition_function: depth exceeded", N);
  Real z(1L);
  for (int k = 0; k < N; ++k) z *= table.h[static_cast<size_t>(k)];
  return z;
}

Real hankel_partition(const MomentTable& mt, int N) {
  if (N < 1 || 2 * (N - 1) > mt.count()) throw OrthoError("hankel_partition: depth exceeded", N);
  RealMatrix H(static_cast<size_t>(N), std::vector<Real>(static_cast<size_t>(N), Real(0L)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) H[static_cast<size_t>(i)][static_cast<size_t>(j)] = mt.M[static_cast<size_t>(i + j)];
  return lu_determinant(H);
}

Real orthopoly(const RecurrenceTable& table, int k, const Real& lambda) {
  if (k > table.depth()) throw OrthoError("orthopoly: depth exceeded", k);
  Real pm1(0L), p0(1L);
  for (int j = 0; j < k; ++j) {
    Real g2 = table.gamma[static_cast<size_t>(j)] * table.gamma[static_cast<size_t>(j)];
    Real p1 = (lambda - table.S[static_cast<size_t>(j)]) * p0 - g2 * pm1;
    pm1 = p0;
    p0 = p1;
  }
  return p0;
}

Real orthopoly_hankel(const MomentTable& mt, int k, const Real& lambda) {
  if (2 * k - 1 > mt.count()) throw OrthoError("orthopoly_hankel: depth exceeded", k);
  if (k == 0) return Real(1L);
  size_t n = static_cast<size_t>(k) + 1;
  RealMatrix A(n, std::vector<Real>(n, Real(0L)));
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = 0; j < n; ++j) A[i][j] = mt.M[i + j];
  Real lpow(1L);
  for (size_t j = 0; j < n; ++j) {
    A[n - 1][j] = lpow;
    lpow *= lambda;
  }
  Real num = lu_determinant(A);
  RealMatrix H(static_cast<size_t>(k), std::vector<Real>(static_cast<size_t>(k), Real(0L)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) H[static_cast<size_t>(i)][static_cast<size_t>(j)] = mt.M[static_cast<size_t>(i + j)];
  return num / lu_determinant(H);
}

Real orthopoly_qminor(const RecurrenceTable& table, int k, const Real& lambda) {
  if (k > table.depth()) throw OrthoError("orthopoly_qminor: depth exceeded", k);
  if (k == 0) return Real(1L);
  size_t n = static_cast<size_t>(k);
  RealMatrix A(n, std::vector<Real>(n, Real(0L)));
  for (size_t i = 0; i < n; ++i) {
    A[i][i] = lambda - table.S[i];
    if (i + 1 < n) {
      A[i][i + 1] = -table.gamma[i + 1];
      A[i + 1][i] = -table.gamma[i + 1];
    }
  }
  return lu_determinant(A);
}

Real wave_function(const RecurrenceTable& table, int k, const Real& x) {
  return wave_column(table, k, x).psi[static_cast<size_t>(k)];
}

Real cd_kernel(const RecurrenceTable& table, int N, const Real& x, const Real& y) {
  if (N < 1 || N > table.depth()) throw OrthoError("cd_kernel: depth exceeded", N);
  const Real& gN = table.gamma[static_cast<size_t>(N)];
  WaveColumn cx = wave_column(table, N, x);
  size_t n = static_cast<size_t>(N);
  if (x == y)
    return gN * (cx.psi[n - 1] * cx.dpsi[n] - cx.psi[n] * cx.dpsi[n - 1]);
  WaveColumn cy = wave_column(table, N, y);
  return gN * (cx.psi[n - 1] * cy.psi[n] - cx.psi[n] * cy.psi[n - 1]) / (y - x);
}

Real cd_kernel_sum(const RecurrenceTable& table, int N, const Real& x, const Real& y) {
  if (N < 1 || N > table.depth()) throw OrthoError("cd_kernel_sum: depth exceeded", N);
  WaveColumn cx = wave_column(table, N, x);
  WaveColumn cy = wave_column(table, N, y);
  Real acc(0L);
  for (int k = 0; k < N; ++k) acc += cx.psi[static_cast<size_t>(k)] * cy.psi[static_cast<size_t>(k)];
  return acc;
}

Real joint_density(const RecurrenceTable& table, int N, int k, const std::vector<Real>& points) {
  if (k > N) throw OrthoError("joint_density: k > N", k);
  if (static_cast<int>(points.size()) != k) throw std::invalid_argument("joint_density: points.size() != k");
  if (k == 0) return Real(1L);
  RealMatrix A(static_cast<size_t>(k), std::vector<Real>(static_cast<size_t>(k), Real(0L)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          cd_kernel(table, N, points[static_cast<size_t>(i)], points[static_cast<size_t>(j)]);
  Real det = lu_determinant(A);
  return det * Real(factorial(static_cast<unsigned long>(N - k)) / factorial(static_cast<unsigned long>(N)));
}

Real trace_moment(const RecurrenceTable& table, int N, int m) {
  if (N + m > table.depth()) throw OrthoError("trace_moment: depth exceeded", N + m);
  if (m % 2 == 1 && potential_is_even(table.V)) return Real(0L);
  Real acc(0L);
  for (int k = 0; k < N; ++k) acc += banded::q_power_entry(table.gamma, table.S, k, k, m);
  return acc;
}

Real motzkin_paths(const RecurrenceTable& table, int start, int end, int length) {
  if (std::max(start, end) + length > table.depth())
    throw OrthoError("motzkin_paths: depth exceeded", std::max(start, end) + length);
  return banded::motzkin_sum(table.gamma, table.S, start, end, length);
}

Real resolvent_continued_fraction(const RecurrenceTable& table, const Real& x, int depth) {
  if (depth < 1 || depth > table.depth()) throw OrthoError("resolvent_continued_fraction: bad depth", depth);
  Real p0(1L), p1 = x - table.S[0];
  Real q0(0L), q1(1L);
  for (int k = 1; k < depth; ++k) {
    Real g2 = table.gamma[static_cast<size_t>(k)] * table.gamma[static_cast<size_t>(k)];
    Real p2 = (x - table.S[static_cast<size_t>(k)]) * p1 - g2 * p0;
    Real q2 = (x - table.S[static_cast<size_t>(k)]) * q1 - g2 * q0;
    p0 = p1;
    p1 = p2;
    q0 = q1;
    q1 = q2;
  }
  if (p1.is_zero()) throw std::domain_error("resolvent_continued_fraction: p_n(x) = 0");
  return q1 / p1;
}

} // namespace rmt
