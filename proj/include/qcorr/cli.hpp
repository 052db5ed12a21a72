#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/gaussian.hpp"
#include "qcorr/model.hpp"
#include "qcorr/spectral.hpp"
#include "qcorr/tolerances.hpp"

// Sweep, band and validation drivers behind the `qcorr` command line tool.
namespace qcorr::cli {

enum class MethodChoice { Analytic, Quadrature, Both };

MethodChoice parse_method(std::string_view s);
std::string_view to_string(MethodChoice m) noexcept;

enum class Axis { K, Omega2, Temperature, Gamma };

Axis parse_axis(std::string_view s);
std::string_view to_string(Axis a) noexcept;

/// Sets the parameter an axis controls.
void set_axis(ModelParams& p, Axis a, double value) noexcept;

struct GridAxis {
  Axis axis = Axis::K;
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;

  /// lo + (hi - lo) i / (n - 1)
  double value(int i) const noexcept;
};

/// Parses `axis:lo:hi:n`. Throws Error(InvalidArgument) on malformed input,
/// n < 2, or a range outside the parameter domain of the axis.
GridAxis parse_grid_axis(std::string_view spec);

struct SweepGrid {
  GridAxis axis1;
  std::optional<GridAxis> axis2;
  ModelParams base;
  MethodChoice method = MethodChoice::Analytic;

  int point_count() const noexcept { return axis1.n * (axis2 ? axis2->n : 1); }
  /// Parameters of point t in row order (axis2-major: t = j * n1 + i).
  ModelParams params_at(int t) const noexcept;
  double axis1_at(int t) const noexcept { return axis1.value(t % axis1.n); }
  std::optional<double> axis2_at(int t) const noexcept;
};

/// Default figure grid: k in [0, 200] x omega2 in (0, 10], 100 x 100.
SweepGrid figure_grid(const ModelParams& base);

enum class PointStatus { Ok, SkippedResonant, Failed };

std::string_view to_string(PointStatus s) noexcept;

struct SweepRecord {
  int index = 0;
  double axis1 = 0.0;
  std::optional<double> axis2;
  Method method = Method::Analytic;
  PointStatus status = PointStatus::Ok;
  std::string message;
  CorrelationReport report;
};

struct SpotCheck {
  int index = 0;
  /// Worst |analytic - quadrature| over its allowance rel |entry| + abs; <= 1 passes.
  double entry_error_ratio = 0.0;
  double log_negativity_diff = 0.0;
  double discord_diff = 0.0;
  bool passed = true;
  std::string message;
};

struct SweepOptions {
  int workers = 1;
  std::uint64_t seed = 12345;
  /// Quadrature cross-check on about one analytic point in fifty.
  bool spot_check = true;
  Tolerances tol;
  /// Progress lines go here when set.
  std::ostream* progress = nullptr;
};

struct SweepResult {
  /// Points in grid order. With MethodChoice::Both each point has an analytic
  /// record followed by a quadrature record.
  std::vector<SweepRecord> records;
  std::vector<SpotCheck> spot_checks;
  int failed_points = 0;
  int skipped_points = 0;

  /// More than 10% of the grid points failed.
  bool too_many_failures(int point_count) const noexcept { return 10 * failed_points > point_count; }
};

SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& opts);

/// CSV with a `#` metadata header and one data row per record.
void write_sweep_csv(std::ostream& os, const SweepGrid& grid, const SweepResult& result,
                     const std::vector<std::string>& notes = {});
void write_sweep_json(std::ostream& os, const SweepGrid& grid, const SweepResult& result,
                      const std::vector<std::string>& notes = {});

/// Evaluates one parameter point. Throws qcorr::Error.
CorrelationReport evaluate_point(const ModelParams& p, Method method, const Tolerances& tol);

/// Worst entrywise |a - b| / (tol.cross_method_rel |a| + tol.cross_method_abs).
double covariance_error_ratio(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b, const Tolerances& tol);

struct Band {
  double omega_prime = 0.0;
  double omega_double_prime = 0.0;
  double max_log_negativity = 0.0;
  /// Half-width of the final bisection brackets.
  double tolerance_achieved = 0.0;
  /// Set when the band runs into the scan boundary, so the edge is not a root.
  bool lower_open = false;
  bool upper_open = false;
};

struct BandOptions {
  double scan_lo = 0.0;   // <= 0 means 0.01 omega1
  double scan_hi = 0.0;   // <= 0 means 10 max(omega1, omega_c)
  int scan_points = 200;  // log-spaced
  double bisect_tol = 1e-4;
  Method method = Method::Analytic;
};

struct BandResult {
  std::vector<Band> bands;
  /// Index of the band holding the largest E_N.
  std::optional<std::size_t> primary;
  double scan_lo = 0.0;
  double scan_hi = 0.0;

  bool empty() const noexcept { return bands.empty(); }
  double width() const noexcept {
    return primary ? bands[*primary].omega_double_prime - bands[*primary].omega_prime : 0.0;
  }
};

/// Finds the intervals of omega2 with E_N > 0 at fixed other parameters.
///
/// A log-spaced scan brackets the sign changes of -ln nu~_-, and each edge is
/// bisected to bisect_tol. Points resonant with omega1 are left out of the scan.
BandResult find_bands(const ModelParams& base, const BandOptions& opts, const Tolerances& tol);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const noexcept;
};

/// Cross-method lattice, symplectic positivity, equipartition, weak-dissipation
/// convergence and discord-oracle checks. n_cases random points or states are
/// drawn per randomised check; n_cases = 0 gives an empty report.
ValidationReport run_validation(std::uint64_t seed, int n_cases, const Tolerances& tol);

/// Entry point of the tool. Returns the process exit code:
/// 0 ok or empty band, 1 validation failure, 2 bad input, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
