// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

namespace rmt {

struct Histogram {
  std::vector<double> centers;
  std::vector<double> density;
  double bin_width = 0.0;
};

/// Density-normalized histogram on [lo, hi): the total mass equals the
/// fraction of values that landed inside the range.
Histogram histogram(const std::vector<double>& values, int bins, double lo, double hi);

/// Σ_bins |density_b − f(center_b)| · width.
double l1_distance(const Histogram& h, const std::function<double(double)>& density);

/// Kolmogorov-Smirnov distance of a sample against a CDF:
/// sup_i max(|F(x_(i)) − i/n|, |F(x_(i)) − (i−1)/n|).
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

/// Sample mean with standard error s/√n.
MeanSe mean_se(const std::vector<double>& values);

/// Leave-one-out jackknife standard error of a statistic of the sample.
double jackknife_se(const std::vector<double>& values,
                    const std::function<double(const std::vector<double>&)>& stat);

} // namespace rmt
