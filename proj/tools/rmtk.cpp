// This file is part of rmtk, a random-matrix-theory workbench.
// SPDX-License-Identifier: MIT
#include <rmt/angular.hpp>
#include <rmt/fredholm.hpp>
#include <rmt/io.hpp>
#include <rmt/maps.hpp>
#include <rmt/model.hpp>
#include <rmt/ortho.hpp>
#include <rmt/saddle.hpp>
#include <rmt/sampling.hpp>
#include <rmt/stats.hpp>
#include <rmt/toprec.hpp>
#include <rmt/version.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace rmt;
using nlohmann::json;

// Flag-level problems beyond CLI11's parser: exit code 2, message names the
// offending flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
};

using Params = std::vector<std::pair<std::string, std::string>>;

void add_common(CLI::App* cmd, Common& c, const std::string& default_format,
                bool format_fixed = false) {
  c.format = default_format;
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--out", c.out, "output path (default stdout)");
  auto* fmt = cmd->add_option("--format", c.format, "output format");
  if (format_fixed)
    fmt->check(CLI::IsMember({default_format}));
  else
    fmt->check(CLI::IsMember({"csv", "json"}));
}

void emit(const Common& c, const std::string& sub, const Params& params, const std::string& body) {
  write_output(c.out, file_header(sub, params) + body);
}

std::string ints_csv(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string doubles_csv(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

json columns_json(const std::vector<std::string>& names,
                  const std::vector<std::vector<double>>& rows) {
  json j = json::object();
  for (std::size_t c = 0; c < names.size(); ++c) {
    json col = json::array();
    for (const auto& row : rows) col.push_back(row[c]);
    j[names[c]] = col;
  }
  return j;
}

// ---------------------------------------------------------------- sample --

struct SampleOpts {
  Common common;
  int beta = 2;
  int size = 4;
  int draws = 1;
};

void run_sample(const SampleOpts& o) {
  EnsembleSpec spec(o.beta, o.size);
  Params params{{"beta", std::to_string(o.beta)},
                {"N", std::to_string(o.size)},
                {"seed", std::to_string(o.common.seed)},
                {"draws", std::to_string(o.draws)},
                {"format", o.common.format}};
  std::vector<std::vector<double>> all;
  all.reserve(static_cast<std::size_t>(o.draws));
  for (int d = 0; d < o.draws; ++d)
    all.push_back(sample_gaussian(spec, o.common.seed + static_cast<std::uint64_t>(d)).eigenvalues);

  if (o.common.format == "json") {
    json j{{"beta", o.beta}, {"N", o.size}, {"seed", o.common.seed}, {"eigenvalues", all}};
    emit(o.common, "sample", params, j.dump(1) + "\n");
    return;
  }
  std::string body = "# eigenvalue\n";
  for (int d = 0; d < o.draws; ++d) {
    body += "# draw " + std::to_string(d) + "\n";
    for (double x : all[static_cast<std::size_t>(d)]) body += format_double(x) + "\n";
  }
  emit(o.common, "sample", params, body);
}

// --------------------------------------------------------------- density --

struct DensityOpts {
  Common common;
  double t = 0.0;
  int points = 200;
  double lo = 0.0, hi = 0.0;
  bool have_lo = false, have_hi = false;
};

void run_density(const DensityOpts& o) {
  OneCutCurve<double> curve;
  try {
    Potential<double> v = o.t == 0.0 ? Potential<double>::gaussian()
                                     : Potential<double>({0.0, 1.0, 0.0, -o.t});
    curve = solve_one_cut(v);
  } catch (const std::exception& e) {
    throw UsageError("--t: no one-cut solution at this coupling (" + std::string(e.what()) + ")");
  }
  double lo = o.have_lo ? o.lo : curve.edge_b();
  double hi = o.have_hi ? o.hi : curve.edge_a();
  if (!(hi > lo)) throw UsageError("--hi: range must satisfy lo < hi");

  Params params{{"t", format_double(o.t)},   {"points", std::to_string(o.points)},
                {"lo", format_double(lo)},   {"hi", format_double(hi)},
                {"format", o.common.format}};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < o.points; ++i) {
    double x = lo + (hi - lo) * i / (o.points - 1);
    rows.push_back({x, one_cut_density(curve, x)});
  }
  if (o.common.format == "json")
    emit(o.common, "density", params, columns_json({"x", "rho"}, rows).dump(1) + "\n");
  else
    emit(o.common, "density", params, csv_table({"x", "rho"}, rows));
}

// --------------------------------------------------------------- spacing --

struct SpacingOpts {
  Common common;
  int beta = 2;
  int size = 100;
  int draws = 20;
  int bins = 0;
  double bulk = 0.5;
};

void run_spacing(const SpacingOpts& o) {
  EnsembleSpec spec(o.beta, o.size);
  std::vector<double> pooled;
  for (int d = 0; d < o.draws; ++d) {
    SampledSpectrum spectrum = sample_gaussian(spec, o.common.seed + static_cast<std::uint64_t>(d));
    SpacingSample sp = unfold_spacings(spectrum, o.bulk);
    pooled.insert(pooled.end(), sp.s.begin(), sp.s.end());
  }
  Params params{{"beta", std::to_string(o.beta)}, {"N", std::to_string(o.size)},
                {"seed", std::to_string(o.common.seed)}, {"draws", std::to_string(o.draws)},
                {"bulk", format_double(o.bulk)}, {"bins", std::to_string(o.bins)},
                {"format", o.common.format}};

  if (o.bins > 0) {
    Histogram h = histogram(pooled, o.bins, 0.0, 4.0);
    std::vector<std::vector<double>> rows;
    for (std::size_t b = 0; b < h.centers.size(); ++b)
      rows.push_back({h.centers[b], h.density[b], wigner_surmise(o.beta, h.centers[b])});
    if (o.common.format == "json")
      emit(o.common, "spacing", params,
           columns_json({"center", "density", "surmise"}, rows).dump(1) + "\n");
    else
      emit(o.common, "spacing", params, csv_table({"center", "density", "surmise"}, rows));
    return;
  }
  if (o.common.format == "json") {
    emit(o.common, "spacing", params, json{{"s", pooled}}.dump(1) + "\n");
    return;
  }
  std::string body = "# s\n";
  for (double s : pooled) body += format_double(s) + "\n";
  emit(o.common, "spacing", params, body);
}

// ----------------------------------------------------------------- ortho --

struct OrthoOpts {
  Common common;
  std::string potential_path;
  int depth = 12;
};

Potential<double> potential_from_json(const std::string& path) {
  json j;
  try {
    j = parse_json_with_header(read_text_file(path));
  } catch (const json::exception& e) {
    throw UsageError("--potential: not valid JSON (" + std::string(e.what()) + ")");
  } catch (const UsageError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw UsageError("--potential: " + std::string(e.what()));
  }
  if (!j.is_array() || j.empty())
    throw UsageError("--potential: expected a nonempty array of {k, numerator, denominator}");
  int kmax = 0;
  for (const json& entry : j) {
    if (!entry.contains("k") || !entry.contains("numerator") || !entry.contains("denominator"))
      throw UsageError("--potential: entries need k, numerator, denominator");
    int k = entry["k"].get<int>();
    if (k < 1 || entry["denominator"].get<long>() == 0)
      throw UsageError("--potential: k must be >= 1 and denominator nonzero");
    kmax = std::max(kmax, k);
  }
  std::vector<double> tk(static_cast<std::size_t>(kmax), 0.0);
  for (const json& entry : j)
    tk[static_cast<std::size_t>(entry["k"].get<int>() - 1)] +=
        static_cast<double>(entry["numerator"].get<long>()) /
        static_cast<double>(entry["denominator"].get<long>());
  try {
    return Potential<double>(tk);
  } catch (const std::exception& e) {
    throw UsageError("--potential: " + std::string(e.what()));
  }
}

void run_ortho(const OrthoOpts& o) {
  Potential<double> v = potential_from_json(o.potential_path);
  Params params{{"potential", o.potential_path},
                {"depth", std::to_string(o.depth)},
                {"format", o.common.format}};
  MomentTable mt;
  RecurrenceTable table;
  try {
    mt = moments(v, 2 * o.depth + 2);
    table = recurrence_from_moments(mt, o.depth);
  } catch (const std::exception& e) {
    throw UsageError("--potential: weight rejected (" + std::string(e.what()) + ")");
  }
  json j;
  for (const char* key : {"gamma", "S", "h", "ZN"}) j[key] = json::array();
  for (int k = 0; k <= table.depth(); ++k) {
    j["gamma"].push_back(table.gamma[static_cast<std::size_t>(k)].to_double());
    j["S"].push_back(table.S[static_cast<std::size_t>(k)].to_double());
    j["h"].push_back(table.h[static_cast<std::size_t>(k)].to_double());
  }
  for (int n = 1; n <= table.depth() + 1; ++n)
    j["ZN"].push_back(partition_function(table, n).to_double());
  emit(o.common, "ortho", params, j.dump(1) + "\n");
}

// ------------------------------------------------------------------- gap --

struct GapOpts {
  Common common;
  double smax = 4.0;
  double step = 0.1;
  int m = 64;
};

void run_gap(const GapOpts& o) {
  int count = static_cast<int>(std::round(o.smax / o.step)) + 1;
  if (count < 5) throw UsageError("--step: grid needs at least 5 points up to --smax");
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) grid.push_back(o.step * i);
  GapCurve curve = spacing_distribution(grid, o.m);
  Params params{{"smax", format_double(o.smax)}, {"step", format_double(o.step)},
                {"m", std::to_string(o.m)}, {"format", o.common.format}};
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < curve.s.size(); ++i)
    rows.push_back({curve.s[i], curve.E[i], curve.P[i]});
  if (o.common.format == "json")
    emit(o.common, "gap", params, columns_json({"s", "E", "P"}, rows).dump(1) + "\n");
  else
    emit(o.common, "gap", params, csv_table({"s", "E", "P"}, rows));
}

// -------------------------------------------------------------------- tw --

struct TwOpts {
  Common common;
  double smin = -5.0;
  double smax = 2.0;
  double step = 0.25;
  int m = 96;
};

void run_tw(const TwOpts& o) {
  if (!(o.smax > o.smin)) throw UsageError("--smax: must exceed --smin");
  Params params{{"smin", format_double(o.smin)}, {"smax", format_double(o.smax)},
                {"step", format_double(o.step)}, {"m", std::to_string(o.m)},
                {"format", o.common.format}};
  std::vector<std::vector<double>> rows;
  for (double s = o.smin; s <= o.smax + 1e-12; s += o.step)
    rows.push_back({s, tracy_widom_beta2(s, o.m)});
  if (o.common.format == "json")
    emit(o.common, "tw", params, columns_json({"s", "F2"}, rows).dump(1) + "\n");
  else
    emit(o.common, "tw", params, csv_table({"s", "F2"}, rows));
}

// ------------------------------------------------------------------ maps --

struct MapsOpts {
  Common common;
  std::vector<int> mu;
  int t_order = 0;
};

void run_maps(const MapsOpts& o) {
  int half_edges = 4 * o.t_order;
  for (int m : o.mu) {
    if (m < 1) throw UsageError("--mu: trace powers must be >= 1");
    half_edges += m;
  }
  if (half_edges > 18 || half_edges % 2 != 0)
    throw UsageError("--mu: total half-edge count must be even and at most 18");
  auto table = connected_correlator_coeffs(o.mu, o.t_order);
  Params params{{"mu", ints_csv(o.mu)},
                {"t_order", std::to_string(o.t_order)},
                {"format", o.common.format}};
  json rows = json::array();
  for (const auto& [key, coeff] : table) {
    Rational c = coeff;
    c.canonicalize();
    rows.push_back(json{{"g", key.first},
                        {"q", key.second},
                        {"coeff_num", static_cast<std::int64_t>(c.get_num().get_si())},
                        {"coeff_den", static_cast<std::int64_t>(c.get_den().get_si())}});
  }
  emit(o.common, "maps", params, json{{"mu", o.mu}, {"table", rows}}.dump(1) + "\n");
}

// ---------------------------------------------------------------- toprec --

struct ToprecOpts {
  Common common;
  int g = 1;
  int n = 1;
  int t_order = 0;
  int depth = 32;
  std::vector<int> mu;
};

void run_toprec(const ToprecOpts& o) {
  std::vector<int> mu = o.mu.empty() ? std::vector<int>(static_cast<std::size_t>(o.n), 4) : o.mu;
  if (static_cast<int>(mu.size()) != o.n)
    throw UsageError("--mu: needs exactly --n entries");
  for (int m : mu)
    if (m < 0) throw UsageError("--mu: powers must be >= 0");

  SpectralCurve curve = o.t_order >= 1 ? quartic_curve(o.t_order) : gaussian_curve();
  TopRecursion engine(curve, o.depth);

  auto coefficient = [&]() -> FormalScalar {
    if (o.g == 0 && o.n == 1) return engine.w01_coefficient(mu[0]);
    if (o.g == 0 && o.n == 2) return engine.w02_coefficient(mu[0], mu[1]);
    return engine.expand_to_W(engine.omega(o.g, o.n), mu);
  };
  FormalScalar w;
  try {
    w = coefficient();
  } catch (const std::exception& e) {
    throw UsageError("--g: unsupported correlator (" + std::string(e.what()) + ")");
  }

  Params params{{"g", std::to_string(o.g)},       {"n", std::to_string(o.n)},
                {"mu", ints_csv(mu)},             {"t_order", std::to_string(o.t_order)},
                {"depth", std::to_string(o.depth)}, {"format", o.common.format}};
  json records = json::array();
  for (int q = 0; q <= o.t_order; ++q) {
    Rational c = w.coeff(q);
    c.canonicalize();
    json rec{{"g", o.g}, {"n", o.n}, {"mu", mu}, {"q", q}};
    rec["num"] = static_cast<std::int64_t>(c.get_num().get_si());
    rec["den"] = static_cast<std::int64_t>(c.get_den().get_si());
    records.push_back(rec);
  }
  emit(o.common, "toprec", params, records.dump(1) + "\n");
}

// --------------------------------------------------------------- angular --

struct AngularOpts {
  Common common;
  std::vector<double> X;
  std::vector<double> Y;
  int mc_samples = 100000;
};

void run_angular(const AngularOpts& o) {
  AngularProblem problem{o.X, o.Y};
  double z_formula = 0.0;
  Eigen::MatrixXd morozov;
  try {
    z_formula = hc_integral(problem);
    morozov = morozov_moments(problem);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--X: " + std::string(e.what()));
  }
  AngularEstimate mc = mc_angular(problem, o.mc_samples, o.common.seed);

  Params params{{"X", doubles_csv(o.X)}, {"Y", doubles_csv(o.Y)},
                {"mc_samples", std::to_string(o.mc_samples)},
                {"seed", std::to_string(o.common.seed)}, {"format", o.common.format}};
  json mz = json::array();
  for (int i = 0; i < morozov.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < morozov.cols(); ++j) row.push_back(morozov(i, j));
    mz.push_back(row);
  }
  json j{{"Z_formula", z_formula}, {"Z_mc", mc.z}, {"stderr", mc.z_se}, {"morozov", mz}};
  emit(o.common, "angular", params, j.dump(1) + "\n");
}

// -------------------------------------------------------------- selftest --

struct CheckResult {
  int criterion;
  std::string label;
  bool pass;
  std::string detail;
};

CheckResult check_wick() {
  GenusPolynomial p = gaussian_moment(TraceWord({4}, 0), false);
  bool pass = p.coeff.size() == 2 && p.at(1) == Rational(2) && p.at(-1) == Rational(1);
  return {1, "wick", pass, "<N Tr M^4> = 2N^2 + 1 as exact rationals"};
}

CheckResult check_quartic_gamma() {
  OneCutCurve<FormalScalar> formal = solve_one_cut(formal_quartic(3));
  FormalScalar g2 = formal.gamma * formal.gamma;
  FormalScalar expected =
      FormalScalar::series({Rational(1), Rational(3), Rational(18), Rational(135)});
  bool series_ok = g2 == expected;
  FormalScalar t = FormalScalar::t(3);
  FormalScalar u = FormalScalar::constant_series(Rational(1), 3);
  for (int i = 0; i < 4; ++i) u = FormalScalar(1L) + FormalScalar(3L) * t * u * u;
  bool back_substitution_ok = u == g2;

  OneCutCurve<double> numeric = solve_one_cut(Potential<double>({0.0, -2.0, 0.0, 2.0}));
  double closed = (1.0 + std::sqrt(7.0)) / 6.0;
  double dev = std::abs(numeric.gamma * numeric.gamma - closed);
  bool numeric_ok = dev < 1e-12;
  std::ostringstream detail;
  detail << "series 1+3t+18t^2+135t^3, back-substitution, |gamma^2 - (1+sqrt 7)/6| = " << dev;
  return {3, "one-cut gamma", series_ok && back_substitution_ok && numeric_ok, detail.str()};
}

CheckResult check_orthogonal_tables() {
  PrecisionGuard guard(448);
  bool pass = true;
  std::ostringstream detail;

  MomentTable gm = moments(Potential<double>::gaussian(), 42);
  RecurrenceTable gt = recurrence_from_moments(gm, 20);
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    worst = std::max(worst, std::abs(gt.S[static_cast<std::size_t>(k - 1)].to_double()));
    worst = std::max(worst,
                     std::abs(gt.gamma[static_cast<std::size_t>(k)].to_double() - std::sqrt(k)));
  }
  pass = pass && worst < 1e-10;
  detail << "gaussian max |S_k|,|gamma_k - sqrt k| = " << worst;

  Potential<double> vq({0.0, -1.0, 0.0, 1.0});
  MomentTable qm = moments(vq, 27);
  RecurrenceTable qt = recurrence_from_moments(qm, 13);
  double worst_string = 0.0;
  for (int k = 1; k <= 10; ++k) {
    auto [off, diag] = string_equation_residual(vq, qt, k);
    worst_string = std::max(worst_string, std::max(abs(off), abs(diag)).to_double());
  }
  pass = pass && worst_string < 1e-8;
  detail << "; quartic string residual = " << worst_string;

  double worst_z = 0.0;
  for (int n = 1; n <= 8; ++n) {
    Real lhs = partition_function(gt, n), rhs = hankel_partition(gm, n);
    worst_z = std::max(worst_z, (abs(lhs - rhs) / abs(rhs)).to_double());
  }
  pass = pass && worst_z < 1e-10;
  detail << "; Z_N vs Hankel rel = " << worst_z;
  return {4, "orthogonal recurrences", pass, detail.str()};
}

CheckResult check_motzkin() {
  std::vector<Rational> gamma, s;
  for (int k = 0; k <= 14; ++k) {
    gamma.push_back(make_rational(2 * k + 1, k + 3));
    s.push_back(make_rational(k * k - 2, 2 * k + 5));
  }
  gamma[0] = Rational(0);
  bool pass = true;
  for (int start = 0; start <= 5 && pass; ++start)
    for (int length = 0; length <= 8 && pass; ++length)
      pass = banded::motzkin_sum(gamma, s, start, start, length) ==
             banded::q_power_entry(gamma, s, start, start, length);

  Rational g1sq = gamma[1] * gamma[1];
  Rational paths[4] = {s[0] * s[0] * s[0], g1sq * s[1], g1sq * s[0], s[0] * g1sq};
  Rational total = paths[0] + paths[1] + paths[2] + paths[3];
  pass = pass && total == banded::q_power_entry(gamma, s, 0, 0, 3);
  return {5, "motzkin paths", pass,
          "banded powers equal path sums for start <= 5, length <= 8; (Q^3)_00 splits into 4 paths"};
}

CheckResult check_fredholm() {
  double worst = 0.0;
  for (double s : {1.0, 2.0, 3.0, 4.0}) {
    double coarse = fredholm_det(sine_kernel_spec(s, 64));
    double fine = fredholm_det(sine_kernel_spec(s, 128));
    worst = std::max(worst, std::abs(coarse - fine));
  }
  bool stable = worst < 1e-8;

  KernelSpec rank_one = user_kernel_spec([](double x, double y) { return x * y; }, 0.0, 1.0, 64);
  double dev = std::abs(fredholm_det(rank_one) - 2.0 / 3.0);
  std::ostringstream detail;
  detail << "sine |E_64 - E_128| = " << worst << "; rank-one |det - 2/3| = " << dev;
  return {8, "fredholm determinants", stable && dev < 1e-12, detail.str()};
}

int run_selftest(const Common& common) {
  using clock = std::chrono::steady_clock;
  std::ostringstream report;
  bool all_pass = true;
  CheckResult (*checks[])() = {check_wick, check_quartic_gamma, check_orthogonal_tables,
                               check_motzkin, check_fredholm};
  for (auto* check : checks) {
    auto t0 = clock::now();
    CheckResult r = check();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    all_pass = all_pass && r.pass;
    report << "criterion " << r.criterion << " (" << r.label << "): "
           << (r.pass ? "PASS" : "FAIL") << " [" << ms << " ms] " << r.detail << "\n";
  }
  report << (all_pass ? "selftest: all criteria passed\n" : "selftest: FAILURES above\n");
  std::cout << report.str();
  if (!common.out.empty() && common.out != "-")
    write_output(common.out, file_header("selftest", {{"seed", std::to_string(common.seed)}}) +
                                 report.str());
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmtk: a random-matrix-theory workbench"};
  app.set_version_flag("--version", std::string(version_string));
  app.require_subcommand(1);

  SampleOpts sample_opts;
  auto* sample_cmd = app.add_subcommand("sample", "draw Gaussian beta-ensemble spectra");
  sample_cmd->add_option("--beta", sample_opts.beta, "Dyson index")->check(CLI::IsMember({1, 2, 4}));
  sample_cmd->add_option("--size", sample_opts.size, "matrix size N")->check(CLI::Range(1, 2000));
  sample_cmd->add_option("--draws", sample_opts.draws, "number of draws")->check(CLI::Range(1, 100000));
  add_common(sample_cmd, sample_opts.common, "csv");

  DensityOpts density_opts;
  auto* density_cmd = app.add_subcommand("density", "one-cut equilibrium density x,rho");
  density_cmd->add_option("--t", density_opts.t, "quartic coupling (V = x^2/2 - (t/4) x^4)");
  density_cmd->add_option("--points", density_opts.points, "grid size")->check(CLI::Range(2, 100000));
  density_cmd->add_option("--lo", density_opts.lo, "grid start")
      ->each([&](const std::string&) { density_opts.have_lo = true; });
  density_cmd->add_option("--hi", density_opts.hi, "grid end")
      ->each([&](const std::string&) { density_opts.have_hi = true; });
  add_common(density_cmd, density_opts.common, "csv");

  SpacingOpts spacing_opts;
  auto* spacing_cmd = app.add_subcommand("spacing", "unfolded bulk spacings, raw or binned");
  spacing_cmd->add_option("--beta", spacing_opts.beta, "Dyson index")->check(CLI::IsMember({1, 2, 4}));
  spacing_cmd->add_option("--size", spacing_opts.size, "matrix size N")->check(CLI::Range(4, 2000));
  spacing_cmd->add_option("--draws", spacing_opts.draws, "number of draws")->check(CLI::Range(1, 100000));
  spacing_cmd->add_option("--bins", spacing_opts.bins, "histogram bins (0 = raw spacings)")
      ->check(CLI::Range(0, 10000));
  spacing_cmd->add_option("--bulk", spacing_opts.bulk, "central index fraction kept")
      ->check(CLI::Range(0.01, 1.0));
  add_common(spacing_cmd, spacing_opts.common, "csv");

  OrthoOpts ortho_opts;
  auto* ortho_cmd = app.add_subcommand("ortho", "recurrence table of an even polynomial weight");
  ortho_cmd->add_option("--potential", ortho_opts.potential_path,
                        "JSON array of {k, numerator, denominator}")->required();
  ortho_cmd->add_option("--depth", ortho_opts.depth, "table depth K")->check(CLI::Range(1, 120));
  add_common(ortho_cmd, ortho_opts.common, "json", true);

  GapOpts gap_opts;
  auto* gap_cmd = app.add_subcommand("gap", "sine-kernel gap E(s) and spacing density P(s)");
  gap_cmd->add_option("--smax", gap_opts.smax, "grid end")->check(CLI::Range(0.1, 20.0));
  gap_cmd->add_option("--step", gap_opts.step, "grid step")->check(CLI::Range(1e-4, 5.0));
  gap_cmd->add_option("--m", gap_opts.m, "quadrature nodes")->check(CLI::Range(8, 512));
  add_common(gap_cmd, gap_opts.common, "csv");

  TwOpts tw_opts;
  auto* tw_cmd = app.add_subcommand("tw", "Tracy-Widom beta=2 distribution F2(s)");
  tw_cmd->add_option("--smin", tw_opts.smin, "grid start");
  tw_cmd->add_option("--smax", tw_opts.smax, "grid end");
  tw_cmd->add_option("--step", tw_opts.step, "grid step")->check(CLI::Range(1e-3, 5.0));
  tw_cmd->add_option("--m", tw_opts.m, "quadrature nodes")->check(CLI::Range(16, 512));
  add_common(tw_cmd, tw_opts.common, "csv");

  MapsOpts maps_opts;
  auto* maps_cmd = app.add_subcommand("maps", "connected correlator coefficients by genus");
  maps_cmd->add_option("--mu", maps_opts.mu, "trace powers, comma separated")
      ->required()->delimiter(',');
  maps_cmd->add_option("--t-order", maps_opts.t_order, "quartic vertices up to this order")
      ->check(CLI::Range(0, 4));
  add_common(maps_cmd, maps_opts.common, "json", true);

  ToprecOpts toprec_opts;
  auto* toprec_cmd = app.add_subcommand("toprec", "W_{g,n} coefficients from the recursion");
  toprec_cmd->add_option("--g", toprec_opts.g, "genus")->check(CLI::Range(0, 3));
  toprec_cmd->add_option("--n", toprec_opts.n, "marked points")->check(CLI::Range(1, 3));
  toprec_cmd->add_option("--t-order", toprec_opts.t_order, "quartic coupling order")
      ->check(CLI::Range(0, 6));
  toprec_cmd->add_option("--mu", toprec_opts.mu, "trace powers (default 4 per point)")
      ->delimiter(',');
  toprec_cmd->add_option("--depth", toprec_opts.depth, "working series depth")
      ->check(CLI::Range(8, 256));
  add_common(toprec_cmd, toprec_opts.common, "json", true);

  AngularOpts angular_opts;
  auto* angular_cmd = app.add_subcommand("angular", "HCIZ integral and Morozov moments");
  angular_cmd->add_option("--X", angular_opts.X, "diagonal of X, comma separated")
      ->required()->delimiter(',');
  angular_cmd->add_option("--Y", angular_opts.Y, "diagonal of Y, comma separated")
      ->required()->delimiter(',');
  angular_cmd->add_option("--mc-samples", angular_opts.mc_samples, "Monte-Carlo draws")
      ->check(CLI::Range(2, 10000000));
  add_common(angular_cmd, angular_opts.common, "json", true);

  Common selftest_common;
  auto* selftest_cmd = app.add_subcommand("selftest", "fast invariant suite (criteria 1,3,4,5,8)");
  add_common(selftest_cmd, selftest_common, "text", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sample_cmd->parsed()) run_sample(sample_opts);
    else if (density_cmd->parsed()) run_density(density_opts);
    else if (spacing_cmd->parsed()) run_spacing(spacing_opts);
    else if (ortho_cmd->parsed()) run_ortho(ortho_opts);
    else if (gap_cmd->parsed()) run_gap(gap_opts);
    else if (tw_cmd->parsed()) run_tw(tw_opts);
    else if (maps_cmd->parsed()) run_maps(maps_opts);
    else if (toprec_cmd->parsed()) run_toprec(toprec_opts);
    else if (angular_cmd->parsed()) run_angular(angular_opts);
    else if (selftest_cmd->parsed()) return run_selftest(selftest_common);
  } catch (const UsageError& e) {
    std::cerr << "rmtk: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "rmtk: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "rmtk: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
