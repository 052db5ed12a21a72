#pragma once

#include <string>

namespace qcorr {

/// Numerical thresholds shared by the engine and the validation harness.
///
/// Relative tolerances are relative to the natural scale named in each
/// comment. Defaults are the values the test suites are pinned to.
struct Tolerances {
  // model
  double resonance = 1e-6;         // |w1 - w2| relative to min(w1, w2)
  double root_residual = 1e-9;     // |h(z)| relative to sum_m |c_m| |z|^m
  double real_axis = 1e-8;         // |Im z| relative to max(w1, w2, 1)
  double kernel_pole = 1e-12;      // |w + i wc| relative to wc
  double singular_det = 1e-14;     // |det| relative to the squared matrix scale

  // specfun
  double pole_merge = 1e-7;        // pole gap relative to the larger of the two magnitudes
  double partial_fraction = 1e-10; // reconstruction error, relative

  // spectral
  double quad_rel = 1e-10;
  double quad_abs = 1e-14;
  double covariance = 1e-9;        // x-p block, absolute
  double symplectic = 1e-9;        // slack on nu >= 1 (sigma convention)

  // validation harness
  double cross_method_rel = 1e-8;
  double cross_method_abs = 1e-10;
  double measure_agreement = 1e-7;
  double discord_oracle_abs = 1e-4;
  double equipartition = 1e-2;
  double weak_ratio_lo = 10.0 / 1.5;
  double weak_ratio_hi = 10.0 * 1.5;

  /// Defaults, with overrides applied from QCORR_TOL_OVERRIDES.
  ///
  /// Test hook only. The variable holds comma-separated `name=value` pairs
  /// using the field names above, e.g. `cross_method_rel=1e-30`. Unknown
  /// names or malformed values throw Error(InvalidArgument).
  static Tolerances from_environment();

  /// Applies a `name=value,...` override list to this object.
  void apply_overrides(const std::string& spec);
};

}  // namespace qcorr
