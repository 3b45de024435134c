// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/model.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace rmt {

struct SampledSpectrum {
  std::vector<double> eigenvalues;
  EnsembleSpec ensemble;
  std::uint64_t seed = 0;
};

struct SpacingSample {
  std::vector<double> s;
  double bulk_fraction = 0.5;
};

/// One draw from exp(−(Nβ/4) Tr M²) on the β ensemble. The Hermitian and
/// quaternionic cases ride the real embedding [[X,−Y],[Y,X]], so a single
/// symmetric solver serves all three; the duplicated copies (×2 at β=2,
/// Kramers ×4 at β=4) are collapsed from the sorted spectrum.
SampledSpectrum sample_gaussian(const EnsembleSpec& spec, std::uint64_t seed);

/// Eigenvalues of (1/N) XᵀX with X an N×p matrix of i.i.d. N(0, σ²) entries.
SampledSpectrum sample_wishart(int p, int N, double sigma2, std::uint64_t seed);

/// Sorted spectrum of a real symmetric matrix.
std::vector<double> eigenvalues_symmetric(const Eigen::MatrixXd& A);

/// λ_i ↦ N·F̄(λ_i) with F̄ the integrated semicircle; returns consecutive
/// differences over the central bulk fraction of indices.
SpacingSample unfold_spacings(const SampledSpectrum& spectrum, double bulk_fraction = 0.5);

/// C_β s^β exp(−a_β s²) with both ∫P = 1 and ∫sP = 1 imposed,
/// a_β = [Γ((β+2)/2)/Γ((β+1)/2)]², C_β = 2 a_β^{(β+1)/2}/Γ((β+1)/2).
double wigner_surmise(int beta, double s);

} // namespace rmt
