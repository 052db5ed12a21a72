#include "qcorr/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr cplx I{0.0, 1.0};

}  // namespace

ModelParams validate_params(const ModelParams& p, const Tolerances& tol) {
  for (double v : {p.omega1, p.omega2, p.k, p.gamma, p.omega_c, p.temperature}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "parameters must be finite");
  }
  if (p.omega1 <= 0.0 || p.omega2 <= 0.0 || p.omega_c <= 0.0) {
    throw Error(ErrorKind::NonPositiveFrequency,
                fmt::format("omega1={}, omega2={}, omega_c={} must all be positive", p.omega1, p.omega2,
                            p.omega_c));
  }
  if (p.gamma < 0.0) throw Error(ErrorKind::NegativeRate, fmt::format("gamma={} is negative", p.gamma));
  if (p.temperature < 0.0) {
    throw Error(ErrorKind::NegativeRate, fmt::format("temperature={} is negative", p.temperature));
  }
  if (p.k < 0.0) throw Error(ErrorKind::NegativeCoupling, fmt::format("k={} is negative", p.k));
  if (std::abs(p.omega1 - p.omega2) <= tol.resonance * std::min(p.omega1, p.omega2)) {
    throw Error(ErrorKind::ResonantParams,
                fmt::format("omega1={} and omega2={} are resonant; the stationary state depends on the "
                            "initial condition",
                            p.omega1, p.omega2));
  }
  return p;
}

double spectral_density(const ModelParams& p, double omega) noexcept {
  const double r = omega / p.omega_c;
  return 2.0 * p.gamma * omega / (std::numbers::pi * (1.0 + r * r));
}

cplx dissipative_kernel(const ModelParams& p, cplx omega, const Tolerances& tol) {
  const cplx denom = p.omega_c - I * omega;
  if (std::abs(denom) <= tol.kernel_pole * p.omega_c) {
    throw Error(ErrorKind::KernelPole, "dissipative kernel evaluated at its pole -i*omega_c");
  }
  return 2.0 * p.gamma * p.omega_c * p.omega_c / denom;
}

ComplexMatrix2 inverse_susceptibility(const ModelParams& p, cplx omega, const Tolerances& tol) {
  const cplx chi = dissipative_kernel(p, omega, tol);
  const double o2 = p.renormalization();
  const cplx w2 = omega * omega;
  ComplexMatrix2 m;
  m(0, 0) = p.omega1 * p.omega1 + o2 - w2 + p.k - chi;
  m(1, 1) = p.omega2 * p.omega2 + o2 - w2 + p.k - chi;
  m(0, 1) = m(1, 0) = -p.k + o2 - chi;
  return m;
}

ComplexMatrix2 susceptibility(const ModelParams& p, cplx omega, const Tolerances& tol) {
  const ComplexMatrix2 inv = inverse_susceptibility(p, omega, tol);
  const cplx det = inv(0, 0) * inv(1, 1) - inv(0, 1) * inv(1, 0);
  const double scale = inv.cwiseAbs().maxCoeff();
  if (std::abs(det) <= tol.singular_det * scale * scale) {
    throw Error(ErrorKind::SingularAtFrequency,
                fmt::format("alpha^-1 is singular at omega=({}, {})", omega.real(), omega.imag()));
  }
  ComplexMatrix2 out;
  out << inv(1, 1), -inv(0, 1), -inv(1, 0), inv(0, 0);
  return out / det;
}

CharacteristicPolynomial build_h_polynomial(const ModelParams& p) {
  const double o2 = p.renormalization();
  const Polynomial a{p.omega1 * p.omega1 + o2 + p.k, 0.0, -1.0};
  const Polynomial b{p.omega2 * p.omega2 + o2 + p.k, 0.0, -1.0};
  const Polynomial c{o2 - p.k};
  const Polynomial cutoff_factor{p.omega_c, -I};  // wc - i w
  const cplx bath = 2.0 * p.gamma * p.omega_c * p.omega_c;
  return (a * b - c * c) * cutoff_factor - (a + b - 2.0 * c) * bath;
}

RootSet find_roots(const CharacteristicPolynomial& h, double real_axis_scale, const Tolerances& tol) {
  const int n = h.degree();
  if (n < 1) throw Error(ErrorKind::RootFindingFailure, "polynomial has no roots");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = h.leading();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -h.coefficient(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::RootFindingFailure, "companion eigenvalue solve failed");
  }

  const Polynomial dh = h.derivative();
  RootSet out;
  for (int i = 0; i < n; ++i) {
    cplx z = solver.eigenvalues()(i);
    for (int it = 0; it < 50; ++it) {
      const cplx d = dh(z);
      if (d == cplx{}) break;
      const cplx step = h(z) / d;
      z -= step;
      if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(z))) break;
    }
    out.roots.push_back(z);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  for (const auto& z : out.roots) {
    const double res = std::abs(h(z));
    // Backward-error scale sum |c_m| |z|^m: the rounding floor of evaluating h at z.
    double eval_scale = 0.0;
    for (int m = n; m >= 0; --m) eval_scale = eval_scale * std::abs(z) + std::abs(h.coefficient(m));
    if (res >= tol.root_residual * eval_scale) {
      throw Error(ErrorKind::RootFindingFailure,
                  fmt::format("root ({}, {}) has residual {:.3g}", z.real(), z.imag(), res));
    }
    out.residual.push_back(res);
    int mult = 0;
    for (const auto& w : out.roots) {
      if (std::abs(w - z) <= tol.pole_merge * std::max({std::abs(w), std::abs(z), 1e-300})) ++mult;
    }
    out.multiplicity.push_back(mult);
  }
  for (const auto& z : out.roots) {
    if (std::abs(z.imag()) < tol.real_axis * real_axis_scale) {
      throw Error(ErrorKind::NearRealAxisRoot,
                  fmt::format("root ({}, {}) lies on the real axis: undamped mode", z.real(), z.imag()));
    }
  }
  return out;
}

RootSet find_roots(const ModelParams& p, const Tolerances& tol) {
  return find_roots(build_h_polynomial(p), std::max({p.omega1, p.omega2, 1.0}), tol);
}

}  // namespace qcorr
