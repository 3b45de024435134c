// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rmt/ortho.hpp>
#include <rmt/quadrature.hpp>
#include <rmt/rng.hpp>
#include <rmt/saddle.hpp>
#include <rmt/sampling.hpp>
#include <rmt/stats.hpp>

#include <cmath>

using namespace rmt;

namespace {

double semicircle_quantile(double q) {
  double lo = -2.0, hi = 2.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (semicircle_cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Shared pool of GUE draws at N = 200.
const std::vector<SampledSpectrum>& gue_pool() {
  static std::vector<SampledSpectrum> pool = [] {
    std::vector<SampledSpectrum> p;
    EnsembleSpec spec(2, 200);
    for (int d = 0; d < 200; ++d) p.push_back(sample_gaussian(spec, 4200 + d));
    return p;
  }();
  return pool;
}

} // namespace

TEST_CASE("splitmix64 streams are deterministic and well-behaved") {
  SplitMix64 a(9001), b(9001);
  for (int i = 0; i < 64; ++i) CHECK(a.next() == b.next());
  SplitMix64 s1 = SplitMix64::stream(5, 1), s2 = SplitMix64::stream(5, 2);
  CHECK(s1.next() != s2.next());

  SplitMix64 u(321);
  std::vector<double> unif(100000), norm(100000);
  for (auto& v : unif) {
    v = u.uniform();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
  for (auto& v : norm) v = u.normal();
  MeanSe mu = mean_se(unif);
  CHECK(std::fabs(mu.mean - 0.5) < 3.0 * mu.se);
  MeanSe mn = mean_se(norm);
  CHECK(std::fabs(mn.mean) < 3.0 * mn.se);
  double ss = 0.0;
  for (double v : norm) ss += v * v;
  CHECK(std::fabs(ss / norm.size() - 1.0) < 0.02);
}

TEST_CASE("histogram, distances, and error bars") {
  CHECK_THROWS_AS(histogram({}, 4, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(histogram({0.5}, 0, 0.0, 1.0), std::invalid_argument);

  Histogram single = histogram({0.5}, 1, 0.0, 2.0);
  CHECK(single.density[0] == doctest::Approx(0.5));

  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  Histogram flat = histogram(grid, 10, 0.0, 1.0);
  for (double d : flat.density) CHECK(d == doctest::Approx(1.0));
  CHECK(l1_distance(flat, [](double) { return 1.0; }) < 1e-12);

  CHECK(ks_distance({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));

  std::vector<double> vals{1.0, 2.0, 4.0, 8.0, 9.5, 3.25};
  MeanSe ms = mean_se(vals);
  double jk = jackknife_se(vals, [](const std::vector<double>& v) { return mean_se(v).mean; });
  CHECK(jk == doctest::Approx(ms.se).epsilon(1e-12));
}

TEST_CASE("scalar gaussian cases pin the entry variances") {
  // β = 2, N = 1: the matrix is one real N(0,1) variable.
  std::vector<double> draws;
  EnsembleSpec spec(2, 1);
  for (int d = 0; d < 4000; ++d) {
    SampledSpectrum s = sample_gaussian(spec, 100 + d);
    REQUIRE(s.eigenvalues.size() == 1);
    draws.push_back(s.eigenvalues[0]);
  }
  double var = 0.0;
  for (double v : draws) var += v * v;
  var /= draws.size();
  CHECK(std::fabs(var - 1.0) < 0.07);

  // β = 1 and β = 4 scalar variances 2/N and 1/(2N) at N = 1.
  for (auto [beta, target] : {std::pair<int, double>{1, 2.0}, {4, 0.5}}) {
    std::vector<double> ev;
    EnsembleSpec sp(beta, 1);
    for (int d = 0; d < 4000; ++d) ev.push_back(sample_gaussian(sp, 7000 + d).eigenvalues[0]);
    double v = 0.0;
    for (double x : ev) v += x * x;
    v /= ev.size();
    CHECK(std::fabs(v - target) < 0.07 * target * 2.0);
  }
}

TEST_CASE("sampled spectra are real, sorted, and deterministic") {
  SampledSpectrum a = sample_gaussian(EnsembleSpec(2, 64), 77);
  SampledSpectrum b = sample_gaussian(EnsembleSpec(2, 64), 77);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvalues.size() == 64);
  for (size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(std::isfinite(a.eigenvalues[i]));
    if (i) CHECK(a.eigenvalues[i] >= a.eigenvalues[i - 1]);
  }
  CHECK(sample_gaussian(EnsembleSpec(2, 64), 78).eigenvalues != a.eigenvalues);

  for (int beta : {1, 4}) {
    SampledSpectrum s = sample_gaussian(EnsembleSpec(beta, 32), 13);
    CHECK(s.eigenvalues.size() == 32);
    for (double v : s.eigenvalues) CHECK(std::isfinite(v));
  }
}

TEST_CASE("gue spectra follow the semicircle") {
  std::vector<double> pooled;
  for (const auto& s : gue_pool())
    pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  Histogram h = histogram(pooled, 40, -2.2, 2.2);
  CHECK(l1_distance(h, semicircle_density) < 0.05);

  // pooled odd moments vanish within their error bars
  std::vector<double> m1, m3;
  for (const auto& s : gue_pool()) {
    double a = 0.0, c = 0.0;
    for (double v : s.eigenvalues) {
      a += v;
      c += v * v * v;
    }
    m1.push_back(a / s.eigenvalues.size());
    m3.push_back(c / s.eigenvalues.size());
  }
  MeanSe s1 = mean_se(m1), s3 = mean_se(m3);
  CHECK(std::fabs(s1.mean) < 3.0 * s1.se);
  CHECK(std::fabs(s3.mean) < 3.0 * s3.se);
}

TEST_CASE("monte-carlo trace moments meet the determinantal side") {
  const int N = 8;
  std::vector<double> tr2, tr4;
  EnsembleSpec spec(2, N);
  for (int d = 0; d < 4000; ++d) {
    SampledSpectrum s = sample_gaussian(spec, 52000 + d);
    double a = 0.0, b = 0.0;
    for (double v : s.eigenvalues) {
      a += v * v;
      b += v * v * v * v;
    }
    tr2.push_back(a);
    tr4.push_back(b);
  }
  RecurrenceTable table = recurrence_from_moments(moments(Potential<double>({0.0, double(N)}), 2 * 13 + 1), 13);
  Real exact2 = trace_moment(table, N, 2);
  Real exact4 = trace_moment(table, N, 4);
  MeanSe e2 = mean_se(tr2), e4 = mean_se(tr4);
  CHECK(std::fabs(e2.mean - exact2.to_double()) < 3.0 * e2.se);
  CHECK(std::fabs(e4.mean - exact4.to_double()) < 3.0 * e4.se);
  // ⟨Tr M⁴⟩ = 2N + 1/N from the ribbon-graph count
  CHECK(exact4.to_double() == doctest::Approx(2.0 * N + 1.0 / N).epsilon(1e-9));
}

TEST_CASE("wishart spectra follow marchenko-pastur") {
  CHECK_THROWS_AS(sample_wishart(5, 4, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_wishart(2, 4, -1.0, 0), std::invalid_argument);

  // p = 1: scalar χ²/N with mean σ².
  std::vector<double> scalars;
  for (int d = 0; d < 2000; ++d) scalars.push_back(sample_wishart(1, 50, 0.7, 900 + d).eigenvalues[0]);
  MeanSe sm = mean_se(scalars);
  CHECK(std::fabs(sm.mean - 0.7) < 3.0 * sm.se);

  // u = 1: interior histogram vs (1/2π)√((4−x)/x), support edges 0 and 4.
  std::vector<double> pooled;
  for (int d = 0; d < 40; ++d) {
    SampledSpectrum s = sample_wishart(300, 300, 1.0, 31000 + d);
    pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  }
  int outside = 0;
  for (double v : pooled)
    if (v < -0.05 || v > 4.3) ++outside;
  CHECK(outside < static_cast<int>(pooled.size()) / 100);
  Histogram h = histogram(pooled, 30, 0.12, 3.9);
  CHECK(l1_distance(h, [](double x) { return std::sqrt((4.0 - x) / x) / (2.0 * M_PI); }) < 0.05);

  // u = 4 normalized-trace convention: density support [σ²(1−√u)², σ²(1+√u)²].
  std::vector<double> pooled4;
  for (int d = 0; d < 40; ++d) {
    SampledSpectrum s = sample_wishart(200, 800, 1.0, 77000 + d);
    pooled4.insert(pooled4.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  }
  Histogram h4 = histogram(pooled4, 30, 0.2, 2.4);
  CHECK(l1_distance(h4, [](double x) { return marchenko_pastur_density(x, 4.0, 0.25); }) < 0.07);
}

TEST_CASE("symmetric eigensolver basics") {
  Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  auto ev = eigenvalues_symmetric(I2);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(1.0));

  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  ev = eigenvalues_symmetric(swap);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(1.0));

  Eigen::MatrixXd tri(3, 3);
  tri << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  ev = eigenvalues_symmetric(tri);
  CHECK(std::fabs(ev[0] - (2.0 - std::sqrt(2.0))) < 1e-12);
  CHECK(std::fabs(ev[1] - 2.0) < 1e-12);
  CHECK(std::fabs(ev[2] - (2.0 + std::sqrt(2.0))) < 1e-12);

  SplitMix64 rng(5150);
  for (int n : {50, 200}) {
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = rng.normal();
    auto evs = eigenvalues_symmetric(A);
    double sum = 0.0, sq = 0.0;
    for (double v : evs) {
      sum += v;
      sq += v * v;
    }
    CHECK(std::fabs(sum - A.trace()) < 1e-10 * std::fabs(A.trace()) + 1e-10);
    CHECK(std::fabs(sq - A.squaredNorm()) < 1e-10 * A.squaredNorm());
  }

  CHECK_THROWS_AS(eigenvalues_symmetric(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(eigenvalues_symmetric(asym), std::invalid_argument);
}

TEST_CASE("unfolding turns semicircle quantiles into unit spacings") {
  const int n = 64;
  SampledSpectrum synthetic;
  synthetic.ensemble = EnsembleSpec(2, n);
  for (int i = 0; i < n; ++i) synthetic.eigenvalues.push_back(semicircle_quantile((i + 0.5) / n));
  SpacingSample unit = unfold_spacings(synthetic, 1.0);
  REQUIRE(unit.s.size() == n - 1);
  for (double s : unit.s) CHECK(s == doctest::Approx(1.0).epsilon(1e-9));

  SampledSpectrum tiny;
  tiny.ensemble = EnsembleSpec(2, 4);
  tiny.eigenvalues = {-1.0, -0.5, 0.5, 1.0};
  CHECK_THROWS_AS(unfold_spacings(tiny, 0.5), std::invalid_argument);
}

TEST_CASE("pooled gue spacings follow the surmise") {
  std::vector<double> spacings;
  for (const auto& s : gue_pool()) {
    SpacingSample sp = unfold_spacings(s, 0.5);
    spacings.insert(spacings.end(), sp.s.begin(), sp.s.end());
  }
  for (double s : spacings) CHECK(s >= 0.0);
  MeanSe m = mean_se(spacings);
  CHECK(std::fabs(m.mean - 1.0) < 0.02);

  // CDF of the β=2 surmise: ∫₀ˢ (32/π²) t² e^(−4t²/π) dt
  auto surmise_cdf = [](double s) {
    double val = std::erf(2.0 * s / std::sqrt(M_PI)) - (4.0 * s / M_PI) * std::exp(-4.0 * s * s / M_PI);
    return val;
  };
  CHECK(ks_distance(spacings, surmise_cdf) < 0.02);
}

TEST_CASE("wigner surmise normalizations") {
  CHECK_THROWS_AS(wigner_surmise(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(wigner_surmise(2, -0.1), std::invalid_argument);
  CHECK(wigner_surmise(1, 0.7) == doctest::Approx(M_PI / 2.0 * 0.7 * std::exp(-M_PI * 0.49 / 4.0)).epsilon(1e-14));
  CHECK(wigner_surmise(2, 1.3) ==
        doctest::Approx(32.0 / (M_PI * M_PI) * 1.69 * std::exp(-4.0 * 1.69 / M_PI)).epsilon(1e-14));
  for (int beta : {1, 2, 4}) {
    GaussLegendre gl = gauss_legendre(200, 0.0, 10.0);
    double p0 = 0.0, p1 = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) {
      double p = wigner_surmise(beta, gl.x[i]);
      p0 += gl.w[i] * p;
      p1 += gl.w[i] * gl.x[i] * p;
    }
    CHECK(std::fabs(p0 - 1.0) < 1e-10);
    CHECK(std::fabs(p1 - 1.0) < 1e-10);
  }
}
