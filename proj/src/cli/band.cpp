#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "qcorr/cli.hpp"
#include "qcorr/errors.hpp"

namespace qcorr::cli {

namespace {

// -ln nu~_-: positive exactly where E_N > 0.
double entanglement_margin(const ModelParams& base, double omega2, Method method, const Tolerances& tol) {
  ModelParams p = base;
  p.omega2 = omega2;
  return -std::log(pt_lowest_symplectic(covariance(p, method, tol).gamma));
}

}  // namespace

BandResult find_bands(const ModelParams& base, const BandOptions& opts, const Tolerances& tol) {
  ModelParams probe = base;  // omega2 is scanned; check everything else
  probe.omega2 = 2.0 * base.omega1;
  validate_params(probe, tol);
  if (opts.scan_points < 2) throw Error(ErrorKind::InvalidArgument, "band scan needs at least 2 points");
  if (!(opts.bisect_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "bisection tolerance must be positive");

  BandResult out;
  out.scan_lo = opts.scan_lo > 0.0 ? opts.scan_lo : 0.01 * base.omega1;
  out.scan_hi = opts.scan_hi > 0.0 ? opts.scan_hi : 10.0 * std::max(base.omega1, base.omega_c);
  if (!(out.scan_hi > out.scan_lo)) throw Error(ErrorKind::InvalidArgument, "band scan range is empty");

  struct Sample {
    double omega;
    double margin;
  };
  std::vector<Sample> scan;
  const double ratio = std::log(out.scan_hi / out.scan_lo);
  for (int i = 0; i < opts.scan_points; ++i) {
    const double w = i == opts.scan_points - 1 ? out.scan_hi
                                                : out.scan_lo * std::exp(ratio * i / (opts.scan_points - 1));
    if (std::abs(w - base.omega1) <= tol.resonance * std::min(w, base.omega1)) continue;
    scan.push_back({w, entanglement_margin(base, w, opts.method, tol)});
  }

  // Shrinks [outside, inside] around the sign change; returns the final bracket.
  auto bisect = [&](double outside, double inside) {
    while (std::abs(inside - outside) > opts.bisect_tol) {
      const double mid = 0.5 * (outside + inside);
      if (entanglement_margin(base, mid, opts.method, tol) > 0.0) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return std::pair{outside, inside};
  };

  std::size_t i = 0;
  while (i < scan.size()) {
    if (scan[i].margin <= 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < scan.size() && scan[j + 1].margin > 0.0) ++j;

    Band b;
    double achieved = 0.0;
    if (i == 0) {
      b.omega_prime = scan[i].omega;
      b.lower_open = true;
    } else {
      const auto [o, in] = bisect(scan[i - 1].omega, scan[i].omega);
      b.omega_prime = 0.5 * (o + in);
      achieved = std::max(achieved, 0.5 * std::abs(in - o));
    }
    if (j + 1 == scan.size()) {
      b.omega_double_prime = scan[j].omega;
      b.upper_open = true;
    } else {
      const auto [o, in] = bisect(scan[j + 1].omega, scan[j].omega);
      b.omega_double_prime = 0.5 * (o + in);
      achieved = std::max(achieved, 0.5 * std::abs(in - o));
    }
    b.tolerance_achieved = achieved;
    std::size_t best = i;
    for (std::size_t m = i; m <= j; ++m) {
      if (scan[m].margin > scan[best].margin) best = m;
    }
    b.max_log_negativity = scan[best].margin;
    // Golden-section refinement of the peak between the neighbouring scan points.
    if (best > 0 && best + 1 < scan.size()) {
      double lo = std::log(scan[best - 1].omega), hi = std::log(scan[best + 1].omega);
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      auto f = [&](double u) {
        const double w = std::exp(u);
        if (std::abs(w - base.omega1) <= tol.resonance * std::min(w, base.omega1)) return scan[best].margin;
        return entanglement_margin(base, w, opts.method, tol);
      };
      double a = hi - g * (hi - lo), c = lo + g * (hi - lo);
      double fa = f(a), fc = f(c);
      for (int it = 0; it < 40; ++it) {
        if (fa > fc) {
          hi = c;
          c = a;
          fc = fa;
          a = hi - g * (hi - lo);
          fa = f(a);
        } else {
          lo = a;
          a = c;
          fa = fc;
          c = lo + g * (hi - lo);
          fc = f(c);
        }
      }
      b.max_log_negativity = std::max({b.max_log_negativity, fa, fc});
    }
    out.bands.push_back(b);
    i = j + 1;
  }

  for (std::size_t k = 0; k < out.bands.size(); ++k) {
    if (!out.primary || out.bands[k].max_log_negativity > out.bands[*out.primary].max_log_negativity) {
      out.primary = k;
    }
  }
  return out;
}

}  // namespace qcorr::cli
