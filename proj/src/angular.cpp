// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/angular.hpp>

#include <rmt/real.hpp>
#include <rmt/rng.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rmt {
namespace {

constexpr mpfr_prec_t angular_bits = 256;

void validate_shape(const AngularProblem& p) {
  if (p.X.empty() || p.X.size() != p.Y.size())
    throw std::invalid_argument("angular: X and Y must be nonempty and of equal length");
}

void validate_distinct(const AngularProblem& p) {
  validate_shape(p);
  for (const std::vector<double>* v : {&p.X, &p.Y})
    for (std::size_t i = 0; i < v->size(); ++i)
      for (std::size_t j = i + 1; j < v->size(); ++j)
        if ((*v)[i] == (*v)[j])
          throw std::invalid_argument("angular: coincident entries; perturb or take a limit");
}

// E_{kl} = e^{−X_k Y_l} split as e^{shift_k} · Ê_{kl} with
// shift_k = max_l(−X_k Y_l), so every stored entry lies in (0, 1].
struct ScaledKernel {
  RealMatrix e;
  Real log_scale;
};

ScaledKernel scaled_kernel(const AngularProblem& p) {
  const int n = p.size();
  ScaledKernel k;
  k.log_scale = Real(0L);
  k.e.assign(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i) {
    Real shift = -(Real(p.X[i]) * Real(p.Y[0]));
    for (int l = 1; l < n; ++l) {
      Real c = -(Real(p.X[i]) * Real(p.Y[l]));
      if (c > shift) shift = c;
    }
    for (int l = 0; l < n; ++l) k.e[i][l] = exp(-(Real(p.X[i]) * Real(p.Y[l])) - shift);
    k.log_scale += shift;
  }
  return k;
}

Real vandermonde(const std::vector<double>& v) {
  Real d(1L);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) d *= Real(v[i]) - Real(v[j]);
  return d;
}

// Fills the Ginibre matrix and applies the QR column-phase correction.
Eigen::MatrixXcd haar_unitary(SplitMix64& rng, int n) {
  Eigen::MatrixXcd a(n, n);
  const double root_half = std::sqrt(0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = std::complex<double>(rng.normal() * root_half, rng.normal() * root_half);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd u = qr.householderQ();
  for (int j = 0; j < n; ++j) {
    std::complex<double> r = qr.matrixQR()(j, j);
    double m = std::abs(r);
    u.col(j) *= (m == 0.0) ? std::complex<double>(1.0, 0.0) : std::conj(r) / m;
  }
  return u;
}

double weight_of(const Eigen::MatrixXcd& u, const AngularProblem& p) {
  double tr = 0.0;
  for (int b = 0; b < p.size(); ++b)
    for (int c = 0; c < p.size(); ++c) tr += std::norm(u(b, c)) * p.X[c] * p.Y[b];
  return std::exp(-tr);
}

} // namespace

double hc_integral(const AngularProblem& problem) {
  validate_distinct(problem);
  const int n = problem.size();
  if (n == 1) return std::exp(-problem.X[0] * problem.Y[0]);

  PrecisionGuard guard(angular_bits);
  ScaledKernel k = scaled_kernel(problem);
  Real det = lu_determinant(k.e);

  Real c(1L);
  for (long j = 1; j < n; ++j) c *= gamma_fn(Real(j + 1));
  long sign_exp = static_cast<long>(n) * (n - 1) / 2;
  if (sign_exp % 2 != 0) c = -c;

  Real z = c * exp(k.log_scale) * det / (vandermonde(problem.X) * vandermonde(problem.Y));
  return z.to_double();
}

Eigen::MatrixXd morozov_moments(const AngularProblem& problem) {
  validate_distinct(problem);
  const int n = problem.size();
  if (n == 1) return Eigen::MatrixXd::Ones(1, 1);

  PrecisionGuard guard(angular_bits);
  ScaledKernel k = scaled_kernel(problem);
  RealMatrix base = k.e;
  RealMatrix work = k.e;
  Real det_e = lu_determinant(work);
  if (det_e.is_zero()) throw std::runtime_error("morozov_moments: singular moment kernel");

  // Double residue at (x, y) = (X_i, Y_j) of det(E + (x−X)⁻¹E(y−Y)⁻¹):
  // the pole of row i leaves the difference quotients E_{il}/(Y_j − Y_l),
  // the pole of column j then leaves E_{kj}/(X_i − X_k), the crossing entry
  // reduces to E_{ij}, and all other entries keep the evaluated factor
  // 1 + 1/((X_i − X_k)(Y_j − Y_l)). The shared row scaling of E cancels in
  // the ratio with det E.
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      work = base;
      for (int kk = 0; kk < n; ++kk) {
        for (int l = 0; l < n; ++l) {
          if (kk == i && l == j) continue;
          if (kk == i) {
            work[kk][l] /= Real(problem.Y[j]) - Real(problem.Y[l]);
          } else if (l == j) {
            work[kk][l] /= Real(problem.X[i]) - Real(problem.X[kk]);
          } else {
            Real gap = (Real(problem.X[i]) - Real(problem.X[kk])) *
                       (Real(problem.Y[j]) - Real(problem.Y[l]));
            work[kk][l] *= Real(1L) + Real(1L) / gap;
          }
        }
      }
      m(i, j) = (lu_determinant(work) / det_e).to_double();
    }
  }
  return m;
}

HaarSample haar_sample(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("haar_sample: N must be at least 1");
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  return {haar_unitary(rng, n), seed};
}

AngularEstimate mc_angular(const AngularProblem& problem, int samples, std::uint64_t seed) {
  validate_shape(problem);
  if (samples < 2) throw std::invalid_argument("mc_angular: need at least 2 samples");
  const int n = problem.size();

  AngularEstimate est;
  est.samples = samples;
  est.moments = Eigen::MatrixXd::Zero(n, n);
  est.moment_se = Eigen::MatrixXd::Zero(n, n);

  // Pass 1: totals of the weight and the weighted |U|² matrix. The moment
  // indexed (i, j) pairs X_i with Y_j, hence averages |U_{ji}|².
  double w_total = 0.0;
  Eigen::MatrixXd wu_total = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < samples; ++s) {
    SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(s));
    Eigen::MatrixXcd u = haar_unitary(rng, n);
    double w = weight_of(u, problem);
    w_total += w;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) wu_total(i, j) += w * std::norm(u(j, i));
  }

  // Pass 2: jackknife over regenerated draws. For the ratio A/W the
  // leave-one-out deviation is (A·w_s − W·a_s)/(W(W − w_s)); the plain mean
  // is the same formula with unit denominators.
  const double count = static_cast<double>(samples);
  double z_dev_sum = 0.0, z_dev_sq = 0.0;
  Eigen::MatrixXd dev_sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd dev_sq = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < samples; ++s) {
    SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(s));
    Eigen::MatrixXcd u = haar_unitary(rng, n);
    double w = weight_of(u, problem);
    double zd = (w_total / count - w) / (count - 1.0);
    z_dev_sum += zd;
    z_dev_sq += zd * zd;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double d = (wu_total(i, j) * w - w_total * w * std::norm(u(j, i))) /
                   (w_total * (w_total - w));
        dev_sum(i, j) += d;
        dev_sq(i, j) += d * d;
      }
    }
  }

  est.z = w_total / count;
  est.z_se = std::sqrt(std::max(0.0, (count - 1.0) / count * (z_dev_sq - z_dev_sum * z_dev_sum / count)));
  est.moments = wu_total / w_total;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      est.moment_se(i, j) = std::sqrt(std::max(
          0.0, (count - 1.0) / count * (dev_sq(i, j) - dev_sum(i, j) * dev_sum(i, j) / count)));
  return est;
}

} // namespace rmt
