// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rmt {

/// Data of the angular integral Z(X, Y) = ∫ dU exp(−Tr U X U† Y) over U(N)
/// with normalized Haar measure (∫ dU = 1), X and Y the diagonal external
/// matrices. The determinant formulas require pairwise distinct entries
/// within each vector; near-coincident values are handled by the caller as
/// small perturbations.
struct AngularProblem {
  std::vector<double> X;
  std::vector<double> Y;

  int size() const { return static_cast<int>(X.size()); }
};

/// One Haar-distributed unitary together with the seed that produced it.
struct HaarSample {
  Eigen::MatrixXcd U;
  std::uint64_t seed = 0;
};

/// Monte-Carlo estimate of the angular integral. z is the plain Haar average
/// of the weight; moments(i, j) is the ratio estimator of the weighted
/// second moment pairing X_i with Y_j (the entry |U_{ji}|² in the convention
/// Tr U X U† Y = Σ_{b,c} |U_{bc}|² X_c Y_b). Standard errors are
/// leave-one-out jackknife.
struct AngularEstimate {
  double z = 0.0;
  double z_se = 0.0;
  Eigen::MatrixXd moments;
  Eigen::MatrixXd moment_se;
  int samples = 0;
};

/// Z(X, Y) = (−1)^{N(N−1)/2} ∏_{j=1}^{N−1} j! · det(e^{−X_i Y_j}) / (Δ(X)Δ(Y))
/// with Δ(V) = ∏_{i<j}(V_i − V_j). The sign factor is the t = −1 coupling
/// scaling t^{−N(N−1)/2}; it is pinned by exact N = 2 integration and by the
/// Monte-Carlo oracle at N = 2, 3. Determinants run at extended precision
/// with per-row exponent shifts, so widely spread X·Y products neither
/// overflow nor lose the leading digits to cancellation.
double hc_integral(const AngularProblem& problem);

/// Weighted quadratic moments M(i, j) = ⟨|U_{ji}|²⟩ under e^{−Tr UXU†Y}/Z,
/// from the double residue of the generating determinant
/// det(E + (x−X)⁻¹E(y−Y)⁻¹) at x = X_i, y = Y_j, divided by det E, where
/// E_{kl} = e^{−X_k Y_l}. Row index pairs with X, column index with Y; every
/// row and column sums to 1.
Eigen::MatrixXd morozov_moments(const AngularProblem& problem);

/// Haar unitary from the QR decomposition of a complex Ginibre matrix with
/// the column-phase correction conj(R_jj)/|R_jj|, which makes the triangular
/// factor's diagonal positive and the Q factor exactly Haar.
HaarSample haar_sample(int n, std::uint64_t seed);

/// samples ≥ 2 independent Haar draws on streams derived from seed; the
/// stream assignment is fixed, so estimates are reproducible. Coincident X
/// or Y entries are allowed here (the sampler never divides by gaps).
AngularEstimate mc_angular(const AngularProblem& problem, int samples, std::uint64_t seed);

} // namespace rmt
