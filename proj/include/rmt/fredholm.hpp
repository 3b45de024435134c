// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <rmt/ortho.hpp>

#include <functional>
#include <vector>

namespace rmt {

enum class KernelTag { sine_unit_density, airy, cd_finite_n, user };

/// Discretization request for det(Id − K_I): kernel choice, interval [a,b],
/// node count m. The airy tag accepts b = +inf; the substitution
/// x = a + scale·log(1/(1−u)) maps [a,inf) to u in [0,1), with scale set so
/// the Jacobian-weighted kernel is far below 1e-14 at the last node.
struct KernelSpec {
  KernelTag tag = KernelTag::user;
  double a = 0.0;
  double b = 1.0;
  int m = 64;
  std::function<double(double, double)> kernel;
  const RecurrenceTable* table = nullptr;
  int N = 0;
};

KernelSpec sine_kernel_spec(double s, int m = 64);
KernelSpec airy_kernel_spec(double s, int m = 96);
KernelSpec cd_kernel_spec(const RecurrenceTable& table, int N, double a, double b, int m = 64);
KernelSpec user_kernel_spec(std::function<double(double, double)> K, double a, double b, int m);

/// The kernel function behind a spec, evaluated at one point pair.
double kernel_value(const KernelSpec& spec, double x, double y);

/// Gap curve E(s) = det(Id − K_[0,s]) over an s grid, with the spacing
/// density P = d²E/ds² when produced.
struct GapCurve {
  std::vector<double> s;
  std::vector<double> E;
  std::vector<double> P;
};

/// Nyström determinant det(δ_ij − √(w_i w_j) K(x_i,x_j)) on Gauss-Legendre
/// nodes; doubling m moves the result by < 1e-10 for desk-scale kernels.
double fredholm_det(const KernelSpec& spec);

/// E(s) for the unit-mean-density sine kernel sin(π(x−y))/(π(x−y)) on [0,s]
/// over a uniform grid of at least 5 points, and P by central second
/// differences (quadratic extrapolation at the two end points).
GapCurve spacing_distribution(const std::vector<double>& s_grid, int m = 64);

/// Tracy-Widom β=2 CDF det(Id − K_Airy on [s,inf)) for s >= −10. Every call
/// runs the m and 2m discretizations and returns the finer value; their
/// disagreement beyond 1e-9 reports insufficient node count.
double tracy_widom_beta2(double s, int m = 96);

/// det(Id − (K_N)_I) for the weight behind `table`; a and b may be ±inf, in
/// which case the interval is trimmed to where the kernel diagonal falls
/// below 1e-24.
double finite_n_gap(const RecurrenceTable& table, int N, double a, double b, int m = 64);

} // namespace rmt
