#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "qcorr/approx.hpp"
#include "qcorr/cli.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/oracles.hpp"

namespace qcorr::cli {

namespace {

struct CrossMethodStats {
  int points = 0;
  int failures = 0;
  double worst_ratio = 0.0;
  double worst_measure = 0.0;
  double min_nu = std::numeric_limits<double>::infinity();
  std::string first_error;
};

void compare_methods(const ModelParams& p, const Tolerances& tol, CrossMethodStats& s) {
  ++s.points;
  try {
    const CovarianceMatrix a = covariance(p, Method::Analytic, tol);
    const CovarianceMatrix q = covariance(p, Method::Quadrature, tol);
    s.worst_ratio = std::max(s.worst_ratio, covariance_error_ratio(a.gamma, q.gamma, tol));
    const auto ra = correlation_report(a.gamma, tol);
    const auto rq = correlation_report(q.gamma, tol);
    s.worst_measure = std::max({s.worst_measure, std::abs(ra.log_negativity - rq.log_negativity),
                                std::abs(ra.discord_mode2 - rq.discord_mode2)});
    s.min_nu = std::min({s.min_nu, ra.nu_minus, rq.nu_minus});
  } catch (const Error& e) {
    ++s.failures;
    if (s.first_error.empty()) {
      s.first_error = fmt::format("omega2={} k={} gamma={} T={}: {}", p.omega2, p.k, p.gamma, p.temperature, e.what());
    }
  }
}

ValidationCheck cross_method_check(std::string name, const CrossMethodStats& s, const Tolerances& tol) {
  ValidationCheck c;
  c.name = std::move(name);
  c.passed = s.failures == 0 && s.worst_ratio <= 1.0 && s.worst_measure <= tol.measure_agreement;
  c.detail = fmt::format("{} points, worst entry error {:.3g} of allowance, worst E_N/discord diff {:.3g}",
                         s.points, s.worst_ratio, s.worst_measure);
  if (s.failures > 0) c.detail += fmt::format(", {} failed ({})", s.failures, s.first_error);
  return c;
}

double weak_dissipation_error(double gamma, const Tolerances& tol) {
  const ModelParams p{10.0, 4.0, 0.0, gamma, 500.0, 0.01};
  const Eigen::Matrix4d exact = covariance_analytic(p, tol).gamma;
  const Eigen::Matrix4d approx = weak_dissipation_covariances(p).gamma;
  return (exact - approx).cwiseAbs().maxCoeff();
}

}  // namespace

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport run_validation(std::uint64_t seed, int n_cases, const Tolerances& tol) {
  ValidationReport report;
  if (n_cases <= 0) return report;
  std::mt19937_64 rng(seed);

  // Fixed lattice.
  CrossMethodStats lattice;
  for (double omega2 : {1.0, 2.0, 4.0, 6.0, 9.0}) {
    for (double k : {0.0, 10.0, 100.0}) {
      for (double gamma : {0.01, 0.5}) {
        for (double temperature : {0.1, 0.5, 5.0}) {
          compare_methods(ModelParams{10.0, omega2, k, gamma, 500.0, temperature}, tol, lattice);
        }
      }
    }
  }
  report.checks.push_back(cross_method_check("cross_method_lattice", lattice, tol));

  // Random parameter points, detuned by at least 10%.
  CrossMethodStats random_points;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < n_cases; ++i) {
    ModelParams p;
    p.omega1 = 1.0 + 19.0 * unit(rng);
    do {
      p.omega2 = 0.5 + 19.5 * unit(rng);
    } while (std::abs(p.omega1 - p.omega2) < 0.1 * std::min(p.omega1, p.omega2));
    p.k = 100.0 * unit(rng);
    p.gamma = std::pow(10.0, -3.0 + 3.0 * unit(rng));
    p.omega_c = 50.0 + 950.0 * unit(rng);
    p.temperature = std::pow(10.0, -2.0 + 3.0 * unit(rng));
    compare_methods(p, tol, random_points);
  }
  report.checks.push_back(cross_method_check("cross_method_random", random_points, tol));

  // Symplectic positivity of every engine state above, plus invariant-vs-eigenvalue agreement.
  {
    ValidationCheck c{"symplectic_positivity", true, ""};
    double min_nu = std::min(lattice.min_nu, random_points.min_nu);
    double worst_eig = 0.0;
    int unphysical = 0;
    for (int i = 0; i < n_cases; ++i) {
      const Eigen::Matrix4d g = oracle::random_physical_gamma(rng);
      const Eigen::Vector2d ref = oracle::symplectic_eigenvalues(g);
      try {
        const auto nu = symplectic_eigenvalues(g, tol);
        min_nu = std::min(min_nu, nu.nu_minus);
        worst_eig = std::max({worst_eig, std::abs(nu.nu_minus - ref(0)) / ref(0),
                              std::abs(nu.nu_plus - ref(1)) / ref(1)});
      } catch (const Error&) {
        ++unphysical;
      }
    }
    c.passed = unphysical == 0 && min_nu >= 1.0 - tol.symplectic && worst_eig <= tol.symplectic;
    c.detail = fmt::format("min nu_- {:.12g}, worst invariant-vs-eigenvalue difference {:.3g}, {} rejected",
                           min_nu, worst_eig, unphysical);
    report.checks.push_back(c);
  }

  // Closed-form discord against the measurement-grid minimisation.
  {
    ValidationCheck c{"discord_oracle", true, ""};
    double worst = 0.0;
    for (int i = 0; i < n_cases; ++i) {
      const Eigen::Matrix4d g = oracle::random_physical_gamma(rng);
      worst = std::max(worst, std::abs(gaussian_discord_mode2(g, tol) - oracle::discord_mode2_brute_force(g)));
    }
    c.passed = worst <= tol.discord_oracle_abs;
    c.detail = fmt::format("{} states, worst difference {:.3g}", n_cases, worst);
    report.checks.push_back(c);
  }

  // Classical limit: <p^2> = T and <x x^T> = T V^-1.
  {
    ValidationCheck c{"equipartition", true, ""};
    try {
      const ModelParams p{10.0, 4.0, 10.0, 0.01, 500.0, 1e4};
      const CovarianceMatrix cov = covariance_analytic(p, tol);
      Eigen::Matrix2d v;
      v << p.omega1 * p.omega1 + p.k, -p.k, -p.k, p.omega2 * p.omega2 + p.k;
      Eigen::Matrix2d xx;
      xx << cov.x(0, 0), cov.x(0, 1), cov.x(1, 0), cov.x(1, 1);
      const double dev_x = (xx * v / p.temperature - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
      const double dev_p = std::max(std::abs(cov.p(0, 0) / p.temperature - 1.0),
                                    std::abs(cov.p(1, 1) / p.temperature - 1.0));
      c.passed = dev_x <= tol.equipartition && dev_p <= tol.equipartition;
      c.detail = fmt::format("T=1e4: max |<p^2>/T - 1| {:.3g}, max |<xx>V/T - I| {:.3g}", dev_p, dev_x);
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    report.checks.push_back(c);
  }

  // Weak-dissipation formulas converge linearly in gamma.
  {
    ValidationCheck c{"weak_dissipation_ratios", true, ""};
    try {
      const double e2 = weak_dissipation_error(1e-2, tol);
      const double e3 = weak_dissipation_error(1e-3, tol);
      const double e4 = weak_dissipation_error(1e-4, tol);
      const double r1 = e2 / e3, r2 = e3 / e4;
      auto in_range = [&](double r) { return r >= tol.weak_ratio_lo && r <= tol.weak_ratio_hi; };
      c.passed = in_range(r1) && in_range(r2);
      c.detail = fmt::format("errors {:.3g} {:.3g} {:.3g}, ratios {:.3g} {:.3g}", e2, e3, e4, r1, r2);
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace qcorr::cli
