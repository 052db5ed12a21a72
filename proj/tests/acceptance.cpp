// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--report PATH] [--strict]
//
// Exits 0 once every criterion has been evaluated; with --strict any FAIL
// gives exit 1. Exceptions escaping a criterion count as FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcorr/approx.hpp"
#include "qcorr/cli.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/gaussian.hpp"
#include "qcorr/oracles.hpp"
#include "qcorr/spectral.hpp"

using namespace qcorr;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const ModelParams kFig1{10.0, 4.0, 0.0, 0.01, 500.0, 0.5};

// Lowest symplectic eigenvalue seen over every state the suite produces.
double g_min_nu = std::numeric_limits<double>::infinity();
int g_states = 0;

void note_state(double nu_minus) {
  g_min_nu = std::min(g_min_nu, nu_minus);
  ++g_states;
}

// Figure sweeps are shared by several criteria.
struct FigureSweep {
  cli::SweepGrid grid;
  cli::SweepResult result;
  double seconds = 0.0;
};

FigureSweep figure_sweep(double gamma) {
  ModelParams base = kFig1;
  base.gamma = gamma;
  FigureSweep s;
  s.grid = cli::figure_grid(base);
  cli::SweepOptions opts;
  opts.workers = 1;
  opts.spot_check = false;
  const auto start = Clock::now();
  s.result = cli::run_sweep(s.grid, opts);
  s.seconds = seconds_since(start);
  for (const auto& r : s.result.records) {
    if (r.status == cli::PointStatus::Ok) note_state(r.report.nu_minus);
  }
  return s;
}

Outcome oracle_equivalence() {
  const Tolerances tol;
  const auto start = Clock::now();
  int points = 0, failures = 0;
  double worst_ratio = 0.0, worst_measure = 0.0;
  std::string first_error;
  for (double omega2 : {1.0, 2.0, 4.0, 6.0, 9.0}) {
    for (double k : {0.0, 10.0, 100.0}) {
      for (double gamma : {0.01, 0.5}) {
        for (double t : {0.1, 0.5, 5.0}) {
          const ModelParams p{10.0, omega2, k, gamma, 500.0, t};
          ++points;
          try {
            const CovarianceMatrix a = covariance_analytic(p, tol);
            const CovarianceMatrix q = covariance_quadrature(p, tol);
            worst_ratio = std::max(worst_ratio, cli::covariance_error_ratio(a.gamma, q.gamma, tol));
            const auto ra = correlation_report(a.gamma, tol);
            const auto rq = correlation_report(q.gamma, tol);
            note_state(ra.nu_minus);
            note_state(rq.nu_minus);
            worst_measure = std::max({worst_measure, std::abs(ra.log_negativity - rq.log_negativity),
                                      std::abs(ra.discord_mode2 - rq.discord_mode2)});
          } catch (const Error& e) {
            ++failures;
            if (first_error.empty()) first_error = e.what();
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  Outcome o;
  o.passed = failures == 0 && worst_ratio <= 1.0 && worst_measure <= 1e-7 && elapsed < 60.0;
  o.detail = fmt::format("{} points, worst entry error {:.3g} of (1e-8 rel + 1e-10 abs), worst E_N/discord diff "
                         "{:.3g}, {:.2f} s",
                         points, worst_ratio, worst_measure, elapsed);
  if (failures > 0) o.detail += fmt::format(", {} failed: {}", failures, first_error);
  return o;
}

// Worst relative deviation from isolated thermal oscillators; cross terms
// are measured against sqrt(Gamma_ii Gamma_jj).
double isolated_oscillator_error(double gamma) {
  const ModelParams p{10.0, 4.0, 0.0, gamma, 500.0, 0.5};
  const Eigen::Matrix4d g = covariance_analytic(p).gamma;
  note_state(symplectic_eigenvalues(g).nu_minus);
  Eigen::Vector4d ref;
  for (int i = 0; i < 2; ++i) {
    const double w = i == 0 ? p.omega1 : p.omega2;
    const double c = 1.0 / std::tanh(w / (2.0 * p.temperature));
    ref(2 * i) = c / (2.0 * w);
    ref(2 * i + 1) = 0.5 * w * c;
  }
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double dev = i == j ? std::abs(g(i, i) - ref(i)) / ref(i) : std::abs(g(i, j)) / std::sqrt(ref(i) * ref(j));
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

Outcome weak_damping_limit() {
  const double e4 = isolated_oscillator_error(1e-4);
  const double e5 = isolated_oscillator_error(1e-5);
  const double ratio = e4 / e5;
  Outcome o;
  o.passed = e4 < 1e-2 && ratio >= 10.0 / 1.5 && ratio <= 10.0 * 1.5;
  o.detail = fmt::format("max relative error {:.3g} at gamma=1e-4, {:.3g} at 1e-5, ratio {:.3g}", e4, e5, ratio);
  return o;
}

Outcome equipartition() {
  Outcome o;
  double worst_p = 0.0, worst_x = 0.0;
  for (double k : {0.0, 10.0, 100.0}) {
    ModelParams p = kFig1;
    p.k = k;
    p.temperature = 1e4;
    const Eigen::Matrix4d g = covariance_analytic(p).gamma;
    note_state(symplectic_eigenvalues(g).nu_minus);
    Eigen::Matrix2d v, xx;
    v << p.omega1 * p.omega1 + p.k, -p.k, -p.k, p.omega2 * p.omega2 + p.k;
    xx << g(0, 0), g(0, 2), g(2, 0), g(2, 2);
    worst_x = std::max(worst_x, (2.0 * xx * v / (2.0 * p.temperature) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
    worst_p = std::max({worst_p, std::abs(g(1, 1) / p.temperature - 1.0), std::abs(g(3, 3) / p.temperature - 1.0)});
  }
  o.passed = worst_p <= 0.01 && worst_x < 0.02;
  o.detail = fmt::format("T=1e4, k in {{0, 10, 100}}: max |<p^2>/T - 1| {:.3g}, max |2 Gxx V/2T - I| {:.3g}", worst_p,
                         worst_x);
  return o;
}

Outcome weak_dissipation_formulas() {
  const ModelParams p{10.0, 4.0, 0.0, 1e-3, 500.0, 0.01};
  const Eigen::Matrix4d exact = covariance_analytic(p).gamma;
  const Eigen::Matrix4d approx = weak_dissipation_covariances(p).gamma;
  double worst = 0.0;
  for (auto [i, j] : {std::pair{0, 0}, {2, 2}, {1, 1}, {3, 3}, {0, 2}, {1, 3}}) {
    worst = std::max(worst, std::abs(approx(i, j) - exact(i, j)) / std::abs(exact(i, j)));
  }
  Outcome o;
  o.passed = worst <= 0.02;
  o.detail = fmt::format("worst relative deviation {:.3g} over <x_i^2>, <p_i^2>, <x1x2>, <p1p2>", worst);
  return o;
}

Outcome perturbative_root_accuracy() {
  const ModelParams p{10.0, 4.0, 0.0, 1e-3, 500.0, 0.01};
  const RootSet exact = find_roots(p);
  const RootSet approx = perturbative_roots(p);
  const double g = p.gamma / p.omega_c;
  const double allowance = 5.0 * g * g * p.omega_c;
  double worst = 0.0;
  std::string distances;
  for (int i = 0; i < 4; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const cplx& z : exact.roots) nearest = std::min(nearest, std::abs(z - approx.roots[static_cast<std::size_t>(i)]));
    worst = std::max(worst, nearest);
    distances += fmt::format("{}{:.3g}", i ? " " : "", nearest);
  }
  // Second-order size for comparison: gamma^2 / omega_i.
  Outcome o;
  o.passed = worst <= allowance;
  o.detail = fmt::format("oscillator-root distances [{}], allowance {:.3g}; gamma^2/omega1 = {:.3g}", distances, allowance,
                         p.gamma * p.gamma / p.omega1);
  return o;
}

Outcome entanglement_band() {
  const Tolerances tol;
  const auto start = Clock::now();
  const ModelParams base{10.0, 4.0, 0.0, 0.5, 500.0, 0.5};
  cli::BandOptions opts;
  const cli::BandResult b05 = cli::find_bands(base, opts, tol);
  ModelParams hot = base;
  hot.temperature = 5.0;
  const cli::BandResult bhot = cli::find_bands(hot, opts, tol);
  ModelParams strong = base;
  strong.gamma = 0.8;
  const cli::BandResult b08 = cli::find_bands(strong, opts, tol);
  const double elapsed = seconds_since(start);

  Outcome o;
  if (!b05.primary) {
    o.detail = "no band at gamma=0.5, T=0.5";
    return o;
  }
  const cli::Band& band = b05.bands[*b05.primary];
  const bool ordered = band.omega_prime > 0.0 && band.omega_prime < band.omega_double_prime;
  const bool below_omega1 = band.omega_double_prime < base.omega1;
  const bool hot_shrinks = bhot.width() < b05.width();
  const bool strong_widens = b08.primary && b08.width() > b05.width() &&
                             b08.bands[*b08.primary].max_log_negativity > band.max_log_negativity;
  o.passed = ordered && below_omega1 && hot_shrinks && strong_widens && elapsed < 30.0;
  o.detail = fmt::format("gamma=0.5: [{:.6g}, {:.6g}] max E_N {:.4g}; omega'' < omega1: {}; T=5 width {:.6g} ({}); "
                         "gamma=0.8 width {:.6g} max E_N {:.4g}; {:.2f} s",
                         band.omega_prime, band.omega_double_prime, band.max_log_negativity,
                         below_omega1 ? "yes" : "NO", bhot.width(), bhot.empty() ? "empty" : "non-empty", b08.width(),
                         b08.primary ? b08.bands[*b08.primary].max_log_negativity : 0.0, elapsed);
  return o;
}

Outcome discord_structure(const FigureSweep& s) {
  int separable = 0, separable_with_discord = 0;
  double best_discord = -1.0, best_k = 0.0, best_w = 0.0;
  double sep_best = -1.0, sep_best_k = 0.0, sep_best_w = 0.0;
  double min_discord = std::numeric_limits<double>::infinity(), min_mu2 = min_discord;
  for (const auto& r : s.result.records) {
    if (r.status != cli::PointStatus::Ok) continue;
    const auto& m = r.report;
    if (m.log_negativity == 0.0) {
      ++separable;
      separable_with_discord += m.discord_mode2 > 1e-6;
      if (m.discord_mode2 > sep_best) {
        sep_best = m.discord_mode2;
        sep_best_k = r.axis1;
        sep_best_w = *r.axis2;
      }
    }
    if (m.discord_mode2 > best_discord) {
      best_discord = m.discord_mode2;
      best_k = r.axis1;
      best_w = *r.axis2;
    }
    min_discord = std::min(min_discord, m.discord_mode2);
    min_mu2 = std::min(min_mu2, m.purity_mode2);
  }
  // Grid point nearest {k, omega2} -> 0 is the first one in row order.
  const auto& corner = s.result.records.front();
  const bool corner_ok = corner.status == cli::PointStatus::Ok;
  const double fraction = separable > 0 ? static_cast<double>(separable_with_discord) / separable : 0.0;
  const bool a = separable > 0 && fraction >= 0.99;
  const bool b = best_k >= 10.0 && best_k <= 35.0;
  const bool c = corner_ok && corner.report.discord_mode2 == min_discord && corner.report.purity_mode2 == min_mu2;
  Outcome o;
  o.passed = a && b && c;
  o.detail = fmt::format(
      "(a) {}: discord > 1e-6 at {}/{} separable points; (b) {}: discord maximum {:.4g} at k={:.4g}, omega2={:.4g} "
      "(largest over separable points {:.4g} at k={:.4g}, omega2={:.4g}); (c) {}: corner discord {:.3g} mu2 {:.3g}, "
      "grid minima {:.3g} {:.3g}",
      a ? "ok" : "FAIL", separable_with_discord, separable, b ? "ok" : "FAIL", best_discord, best_k, best_w, sep_best,
      sep_best_k, sep_best_w, c ? "ok" : "FAIL", corner.report.discord_mode2, corner.report.purity_mode2, min_discord,
      min_mu2);
  return o;
}

Outcome weak_coupling_trend(const FigureSweep& s) {
  // Anti-diagonal path (k_i, omega2_{n-1-i}): omega2/k decreases along it.
  const int n1 = s.grid.axis1.n, n2 = s.grid.axis2->n;
  const int n = std::min(n1, n2);
  int used = 0, violations = 0;
  double worst = 0.0;
  const cli::SweepRecord* first = nullptr;
  const cli::SweepRecord* prev = nullptr;
  for (int i = 0; i < n; ++i) {
    const int t = (n2 - 1 - i) * n1 + i;
    const auto& r = s.result.records[static_cast<std::size_t>(t)];
    if (r.status != cli::PointStatus::Ok) continue;
    ++used;
    if (!first) first = &r;
    if (prev) {
      const double de = prev->report.log_negativity - r.report.log_negativity;
      const double dd = prev->report.discord_mode2 - r.report.discord_mode2;
      worst = std::max({worst, de, dd});
      if (de > 1e-9 || dd > 1e-9) ++violations;
    }
    prev = &r;
  }
  Outcome o;
  o.passed = used > 1 && violations == 0;
  o.detail = fmt::format("{} path points, {} decreases beyond 1e-9 (largest drop {:.3g}); E_N {:.4g} -> {:.4g}, "
                         "discord {:.4g} -> {:.4g}; sweep {} failed, {} resonant, {:.2f} s",
                         used, violations, worst, first ? first->report.log_negativity : 0.0,
                         prev ? prev->report.log_negativity : 0.0, first ? first->report.discord_mode2 : 0.0,
                         prev ? prev->report.discord_mode2 : 0.0, s.result.failed_points, s.result.skipped_points,
                         s.seconds);
  return o;
}

Outcome property_suites() {
  std::mt19937_64 rng(20240601);
  double worst_eig = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Matrix4d g = oracle::random_physical_gamma(rng);
    const auto nu = symplectic_eigenvalues(g);
    const Eigen::Vector2d ref = oracle::symplectic_eigenvalues(g);
    worst_eig = std::max({worst_eig, std::abs(nu.nu_minus - ref(0)) / ref(0), std::abs(nu.nu_plus - ref(1)) / ref(1)});
    note_state(nu.nu_minus);
  }
  double worst_discord = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Eigen::Matrix4d g = oracle::random_physical_gamma(rng);
    worst_discord = std::max(worst_discord, std::abs(gaussian_discord_mode2(g) - oracle::discord_mode2_brute_force(g)));
  }
  double worst_tmsv = 0.0;
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    const Eigen::Matrix4d g = oracle::two_mode_squeezed_vacuum(r);
    note_state(symplectic_eigenvalues(g).nu_minus);
    worst_tmsv = std::max(worst_tmsv, std::abs(log_negativity(g) - 2.0 * r));
  }
  const bool positive = g_min_nu >= 1.0 - 1e-9;
  Outcome o;
  o.passed = positive && worst_discord <= 1e-4 && worst_eig <= 1e-12 && worst_tmsv <= 1e-10;
  o.detail = fmt::format("min nu_- {:.15g} over {} states; discord vs grid {:.3g}; eigenvalues vs oracle {:.3g} "
                         "(1000 states); |E_N - 2r| {:.3g}",
                         g_min_nu, g_states, worst_discord, worst_eig, worst_tmsv);
  return o;
}

std::string sweep_rows(const std::vector<std::string>& args, int* code) {
  std::vector<const char*> argv{"qcorr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  *code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  std::istringstream in(out.str());
  std::string rows, line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') rows += line + '\n';
  }
  return rows;
}

Outcome determinism() {
  const std::vector<std::string> base{"sweep", "--omega1", "10", "--gamma", "0.01", "--omega-c", "500", "--temp", "0.5"};
  int c1 = 0, c2 = 0, c4 = 0;
  auto with_workers = [&](const char* w) {
    auto a = base;
    a.insert(a.end(), {"--workers", w});
    return a;
  };
  const std::string one = sweep_rows(with_workers("1"), &c1);
  const std::string again = sweep_rows(with_workers("1"), &c2);
  const std::string four = sweep_rows(with_workers("4"), &c4);
  Outcome o;
  o.passed = c1 == 0 && c2 == 0 && c4 == 0 && !one.empty() && one == again && one == four;
  o.detail = fmt::format("default figure grid, {} bytes of data rows; repeat {}, 4 workers {}; exit codes {} {} {}",
                         one.size(), one == again ? "identical" : "DIFFERENT", one == four ? "identical" : "DIFFERENT",
                         c1, c2, c4);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string report_path;
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--report") == 0 && i + 1 < argc) {
      report_path = argv[++i];
    } else if (std::strcmp(argv[i], "--strict") == 0) {
      strict = true;
    } else {
      std::cerr << "usage: acceptance [--report PATH] [--strict]\n";
      return 2;
    }
  }

  std::vector<FigureSweep> sweeps;
  std::string sweep_error;
  try {
    sweeps.push_back(figure_sweep(0.5));
    sweeps.push_back(figure_sweep(0.01));
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  auto needs_sweep = [&](int i, auto f) -> std::function<Outcome()> {
    return [&, i, f] {
      if (static_cast<int>(sweeps.size()) <= i) return Outcome{false, "figure sweep failed: " + sweep_error};
      return f(sweeps[static_cast<std::size_t>(i)]);
    };
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle_equivalence", oracle_equivalence},
      {"weak_damping_limit", weak_damping_limit},
      {"classical_equipartition", equipartition},
      {"weak_dissipation_formulas", weak_dissipation_formulas},
      {"perturbative_roots", perturbative_root_accuracy},
      {"entanglement_band", entanglement_band},
      {"discord_structure", needs_sweep(0, discord_structure)},
      {"weak_coupling_trend", needs_sweep(1, weak_coupling_trend)},
      {"property_suites", property_suites},
      {"determinism", determinism},
  };

  std::ostringstream report;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    const std::string line = fmt::format("{} {:2d} {}: {}", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
    std::cout << line << std::endl;
    report << line << '\n';
  }
  const std::string summary = fmt::format("acceptance: {} criteria, {} passed, {} failed", criteria.size(),
                                          criteria.size() - static_cast<std::size_t>(failed), failed);
  std::cout << summary << '\n';
  report << summary << '\n';

  if (!report_path.empty()) {
    std::ofstream f(report_path);
    f << report.str();
  }
  return strict && failed > 0 ? 1 : 0;
}
