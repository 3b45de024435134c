// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/sampling.hpp>

#include <rmt/rng.hpp>
#include <rmt/saddle.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {
namespace {

// Real symmetric part X and real antisymmetric part Y of one Hermitian draw
// at entry variance v_diag on the diagonal and v_off per real component off
// the diagonal.
void fill_hermitian(SplitMix64& rng, int N, double v_diag, double v_off, Eigen::MatrixXd& X,
                    Eigen::MatrixXd& Y) {
  X.setZero(N, N);
  Y.setZero(N, N);
  double sd = std::sqrt(v_diag), so = std::sqrt(v_off);
  for (int i = 0; i < N; ++i) {
    X(i, i) = sd * rng.normal();
    for (int j = i + 1; j < N; ++j) {
      X(i, j) = X(j, i) = so * rng.normal();
      double im = so * rng.normal();
      Y(i, j) = -im;
      Y(j, i) = im;
    }
  }
}

std::vector<double> collapse(const std::vector<double>& sorted, int stride) {
  std::vector<double> out;
  out.reserve(sorted.size() / stride);
  for (size_t i = 0; i < sorted.size(); i += stride) out.push_back(sorted[i + stride / 2]);
  return out;
}

} // namespace

std::vector<double> eigenvalues_symmetric(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigenvalues_symmetric: matrix not square");
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("eigenvalues_symmetric: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues_symmetric: iteration failed");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + A.rows());
  std::sort(ev.begin(), ev.end());
  return ev;
}

SampledSpectrum sample_gaussian(const EnsembleSpec& spec, std::uint64_t seed) {
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  const int N = spec.N;
  SampledSpectrum out;
  out.ensemble = spec;
  out.seed = seed;

  if (spec.beta == 1) {
    Eigen::MatrixXd A(N, N);
    double sd = std::sqrt(2.0 / N), so = std::sqrt(1.0 / N);
    for (int i = 0; i < N; ++i) {
      A(i, i) = sd * rng.normal();
      for (int j = i + 1; j < N; ++j) A(i, j) = A(j, i) = so * rng.normal();
    }
    out.eigenvalues = eigenvalues_symmetric(A);
    return out;
  }

  if (spec.beta == 2) {
    Eigen::MatrixXd X, Y;
    fill_hermitian(rng, N, 1.0 / N, 1.0 / (2.0 * N), X, Y);
    Eigen::MatrixXd E(2 * N, 2 * N);
    E << X, -Y, Y, X;
    out.eigenvalues = collapse(eigenvalues_symmetric(E), 2);
    return out;
  }

  // β = 4: self-dual quaternion M = A + iB + jC + kD with A symmetric and
  // B, C, D antisymmetric; complex representation [[A+iB, C+iD],[−C+iD, A−iB]],
  // then the real embedding of that 2N×2N Hermitian matrix.
  const double vd = 1.0 / (2.0 * N), vo = 1.0 / (4.0 * N);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N), B = A, C = A, D = A;
  double sd = std::sqrt(vd), so = std::sqrt(vo);
  for (int i = 0; i < N; ++i) {
    A(i, i) = sd * rng.normal();
    for (int j = i + 1; j < N; ++j) {
      A(i, j) = A(j, i) = so * rng.normal();
      double b = so * rng.normal(), c = so * rng.normal(), d = so * rng.normal();
      B(i, j) = b;
      B(j, i) = -b;
      C(i, j) = c;
      C(j, i) = -c;
      D(i, j) = d;
      D(j, i) = -d;
    }
  }
  Eigen::MatrixXd P(2 * N, 2 * N), Q(2 * N, 2 * N);
  P << A, C, -C, A;
  Q << B, D, D, -B;
  Eigen::MatrixXd E(4 * N, 4 * N);
  E << P, -Q, Q, P;
  out.eigenvalues = collapse(eigenvalues_symmetric(E), 4);
  return out;
}

SampledSpectrum sample_wishart(int p, int N, double sigma2, std::uint64_t seed) {
  if (p < 1 || N < p) throw std::invalid_argument("sample_wishart: need N >= p >= 1");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sample_wishart: sigma2 must be positive");
  SplitMix64 rng = SplitMix64::stream(seed, 1);
  Eigen::MatrixXd X(N, p);
  double s = std::sqrt(sigma2);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < p; ++j) X(i, j) = s * rng.normal();
  Eigen::MatrixXd W = (X.transpose() * X) / static_cast<double>(N);
  W = 0.5 * (W + W.transpose());
  SampledSpectrum out;
  out.ensemble = EnsembleSpec(1, p);
  out.seed = seed;
  out.eigenvalues = eigenvalues_symmetric(W);
  return out;
}

SpacingSample unfold_spacings(const SampledSpectrum& spectrum, double bulk_fraction) {
  if (!(bulk_fraction > 0.0 && bulk_fraction <= 1.0))
    throw std::invalid_argument("unfold_spacings: bulk fraction outside (0,1]");
  const auto& ev = spectrum.eigenvalues;
  const int n = static_cast<int>(ev.size());
  const int keep = static_cast<int>(std::floor(bulk_fraction * n));
  const int lo = (n - keep) / 2;
  if (keep < 3) throw std::invalid_argument("unfold_spacings: fewer than 3 retained eigenvalues");
  SpacingSample sample;
  sample.bulk_fraction = bulk_fraction;
  sample.s.reserve(keep - 1);
  double prev = n * semicircle_cdf(ev[lo]);
  for (int i = lo + 1; i < lo + keep; ++i) {
    double cur = n * semicircle_cdf(ev[i]);
    sample.s.push_back(cur - prev);
    prev = cur;
  }
  return sample;
}

double wigner_surmise(int beta, double s) {
  if (beta != 1 && beta != 2 && beta != 4) throw std::invalid_argument("wigner_surmise: beta must be 1, 2, or 4");
  if (s < 0.0) throw std::invalid_argument("wigner_surmise: s must be nonnegative");
  double g1 = std::tgamma((beta + 2) / 2.0), g2 = std::tgamma((beta + 1) / 2.0);
  double a = (g1 / g2) * (g1 / g2);
  double c = 2.0 * std::pow(a, (beta + 1) / 2.0) / g2;
  return c * std::pow(s, beta) * std::exp(-a * s * s);
}

} // namespace rmt
