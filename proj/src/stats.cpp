// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/stats.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {

Histogram histogram(const std::vector<double>& values, int bins, double lo, double hi) {
  if (values.empty()) throw std::invalid_argument("histogram: empty input");
  if (bins < 1) throw std::invalid_argument("histogram: need at least one bin");
  if (!(hi > lo)) throw std::invalid_argument("histogram: empty range");
  Histogram h;
  h.bin_width = (hi - lo) / bins;
  h.centers.resize(bins);
  h.density.assign(bins, 0.0);
  for (int b = 0; b < bins; ++b) h.centers[b] = lo + (b + 0.5) * h.bin_width;
  for (double v : values) {
    if (v < lo || v >= hi) continue;
    int b = std::min(bins - 1, static_cast<int>((v - lo) / h.bin_width));
    h.density[b] += 1.0;
  }
  double norm = static_cast<double>(values.size()) * h.bin_width;
  for (double& d : h.density) d /= norm;
  return h;
}

double l1_distance(const Histogram& h, const std::function<double(double)>& density) {
  double acc = 0.0;
  for (size_t b = 0; b < h.centers.size(); ++b)
    acc += std::fabs(h.density[b] - density(h.centers[b])) * h.bin_width;
  return acc;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double sup = 0.0;
  for (size_t i = 0; i < sample.size(); ++i) {
    double F = cdf(sample[i]);
    sup = std::max(sup, std::fabs(F - static_cast<double>(i + 1) / n));
    sup = std::max(sup, std::fabs(F - static_cast<double>(i) / n));
  }
  return sup;
}

MeanSe mean_se(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean_se: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double var = ss / static_cast<double>(values.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

double jackknife_se(const std::vector<double>& values,
                    const std::function<double(const std::vector<double>&)>& stat) {
  const size_t n = values.size();
  if (n < 2) throw std::invalid_argument("jackknife_se: need at least two values");
  std::vector<double> loo(n);
  std::vector<double> reduced(n - 1);
  for (size_t i = 0; i < n; ++i) {
    size_t k = 0;
    for (size_t j = 0; j < n; ++j)
      if (j != i) reduced[k++] = values[j];
    loo[i] = stat(reduced);
  }
  double mean = 0.0;
  for (double v : loo) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  return std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
}

} // namespace rmt
