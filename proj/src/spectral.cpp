#include "qcorr/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "qcorr/errors.hpp"
#include "qcorr/gaussian.hpp"
#include "qcorr/quadrature.hpp"

namespace qcorr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// pi J(w) coth(w/2T), even in w; T = 0 means coth -> sign(w).
double force_weight(const ModelParams& p, double omega) {
  const double r = omega / p.omega_c;
  const double lorentz = 2.0 * p.gamma / (1.0 + r * r);
  if (p.temperature == 0.0) return lorentz * std::abs(omega);
  return lorentz * 2.0 * p.temperature * x_coth_x(omega / (2.0 * p.temperature));
}

// s(w) = alpha(w) (1, 1)^T, the response of both coordinates to the common force.
Eigen::Vector2cd force_response(const ModelParams& p, double omega, const Tolerances& tol) {
  const ComplexMatrix2 alpha = susceptibility(p, omega, tol);
  return alpha * Eigen::Vector2cd::Ones();
}

// Writes the six independent entries (xx11, xx12, xx22, pp11, pp12, pp22) into Gamma.
Eigen::Matrix4d assemble(const Eigen::Matrix<double, 6, 1>& v) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = v(0);
  g(0, 2) = g(2, 0) = v(1);
  g(2, 2) = v(2);
  g(1, 1) = v(3);
  g(1, 3) = g(3, 1) = v(4);
  g(3, 3) = v(5);
  return g;
}

std::vector<double> quadrature_breakpoints(const ModelParams& p, const RootSet& roots, double upper) {
  std::vector<double> pts{0.0, upper};
  for (const auto& z : roots.roots) {
    const double centre = z.real();
    const double width = std::abs(z.imag());
    if (centre <= 0.0) continue;
    for (double m : {-50.0, -5.0, -1.0, 0.0, 1.0, 5.0, 50.0}) pts.push_back(centre + m * width);
  }
  pts.push_back(p.omega_c);
  if (p.temperature > 0.0) {
    pts.push_back(2.0 * p.temperature);
    pts.push_back(20.0 * p.temperature);
  }
  std::erase_if(pts, [&](double x) { return !(x >= 0.0 && x <= upper); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  return m == Method::Analytic ? "analytic" : "quadrature";
}

void check_covariance(const CovarianceMatrix& cov, const Tolerances& tol) {
  const Eigen::Matrix4d& g = cov.gamma;
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (!g.allFinite()) throw Error(ErrorKind::UnphysicalState, "covariance matrix is not finite");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > tol.covariance * scale) {
    throw Error(ErrorKind::UnphysicalState, "covariance matrix is not symmetric");
  }
  for (int i : {0, 2}) {
    for (int j : {1, 3}) {
      if (std::abs(g(i, j)) > tol.covariance * scale) {
        throw Error(ErrorKind::UnphysicalState,
                    fmt::format("position-momentum covariance ({},{}) = {:.3g} is not zero", i, j, g(i, j)));
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (!(g(i, i) > 0.0)) throw Error(ErrorKind::UnphysicalState, "non-positive variance");
  }
  symplectic_eigenvalues(g, tol);  // throws on a violated uncertainty relation
}

PowerSpectrumEval position_spectrum(const ModelParams& p, double omega, const Tolerances& tol) {
  const Eigen::Vector2cd s = force_response(p, omega, tol);
  const Eigen::Matrix2cd outer = s * s.adjoint();
  PowerSpectrumEval out;
  out.omega = omega;
  out.symmetric = force_weight(p, omega) * outer.real();
  out.vacuum_part = (pi * spectral_density(p, omega)) * outer;
  return out;
}

CovarianceMatrix covariance_quadrature(const ModelParams& params, const Tolerances& tol) {
  const ModelParams p = validate_params(params, tol);
  const RootSet roots = find_roots(p, tol);
  double reach = std::max(p.omega_c, 20.0 * p.temperature);
  for (const auto& z : roots.roots) reach = std::max(reach, std::abs(z));
  const double upper = 50.0 * reach;

  using Vec6 = Eigen::Matrix<double, 6, 1>;
  auto spectra = [&](double omega) -> Vec6 {
    const Eigen::Vector2cd s = force_response(p, omega, tol);
    const double w = force_weight(p, omega) / pi;
    const double s11 = std::norm(s(0));
    const double s12 = (s(0) * std::conj(s(1))).real();
    const double s22 = std::norm(s(1));
    const double w2 = omega * omega;
    Vec6 v;
    v << w * s11, w * s12, w * s22, w * w2 * s11, w * w2 * s12, w * w2 * s22;
    return v;
  };
  // [0, upper] directly, then [upper, upper + 1) mapped to [upper, inf) by w = upper / (1 - t).
  auto integrand = [&](double u) -> Vec6 {
    if (u <= upper) return spectra(u);
    const double t = u - upper;
    const double one_minus = 1.0 - t;
    if (one_minus <= 0.0) return Vec6::Zero();
    const double omega = upper / one_minus;
    return spectra(omega) * (upper / (one_minus * one_minus));
  };

  std::vector<double> pts = quadrature_breakpoints(p, roots, upper);
  pts.push_back(upper + 1.0);

  QuadratureOptions opts;
  opts.rel_tol = tol.quad_rel;
  opts.abs_tol = tol.quad_abs;
  // Cross terms are judged against the geometric mean of the two variances.
  auto scale = [](const Vec6& t) -> Vec6 {
    Vec6 m = t.cwiseAbs();
    m(1) = std::max(m(1), std::sqrt(m(0) * m(2)));
    m(4) = std::max(m(4), std::sqrt(m(3) * m(5)));
    return m;
  };
  const auto result = integrate_adaptive<6>(integrand, pts, opts, scale);
  if (!result.converged) {
    throw Error(ErrorKind::QuadratureNonConvergence,
                fmt::format("achieved error {:.3g} after {} intervals", result.error.maxCoeff(),
                            result.intervals));
  }

  CovarianceMatrix cov;
  cov.gamma = assemble(result.value);
  cov.params = p;
  cov.method = Method::Quadrature;
  cov.error_estimate = result.error.maxCoeff();
  check_covariance(cov, tol);
  return cov;
}

CovarianceMatrix covariance_analytic(const ModelParams& params, const Tolerances& tol) {
  const ModelParams p = validate_params(params, tol);
  const CharacteristicPolynomial h = build_h_polynomial(p);
  const RootSet roots = find_roots(h, std::max({p.omega1, p.omega2, 1.0}), tol);

  // Poles of 1/(h(w) h(-w)): the roots z_k and their reflections -z_k.
  std::vector<cplx> poles = roots.roots;
  for (const auto& z : roots.roots) poles.push_back(-z);
  const cplx lead = h.leading() * h.reflected().leading();

  // s_i(w) h(w) = P_i(w) (wc - i w): the chi terms cancel in adj(alpha^-1)(1,1)^T.
  const Polynomial p1{p.omega2 * p.omega2 + 2.0 * p.k, 0.0, -1.0};
  const Polynomial p2{p.omega1 * p.omega1 + 2.0 * p.k, 0.0, -1.0};
  // pi J(w) (wc^2 + w^2) = 2 gamma wc^2 w
  const Polynomial bath{0.0, 2.0 * p.gamma * p.omega_c * p.omega_c};
  const Polynomial w2{0.0, 0.0, 1.0};
  const std::array<Polynomial, 3> xx = {bath * p1 * p1, bath * p1 * p2, bath * p2 * p2};
  const std::array<Polynomial, 6> numerators = {xx[0], xx[1], xx[2], xx[0] * w2, xx[1] * w2, xx[2] * w2};

  const double T = p.temperature;
  const bool zero_temperature = T < 1e-280;

  // Digamma / log weights depend only on the pole, not on the entry.
  std::vector<cplx> quantum_weight(poles.size());
  std::vector<cplx> classical_weight(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) {
    const cplx z = poles[k];
    const bool upper_half = z.imag() > 0.0;
    const cplx arg = upper_half ? -I * z : I * z;  // Re arg > 0
    if (zero_temperature) {
      quantum_weight[k] = -std::log(arg) / pi;
      classical_weight[k] = 0.0;
    } else {
      quantum_weight[k] = -digamma(1.0 + arg / (2.0 * pi * T)) / pi;
      classical_weight[k] = upper_half ? 2.0 * I * T / z : cplx{};
    }
  }

  Eigen::Matrix<double, 6, 1> total, classical;
  double imag_residue = 0.0;
  for (std::size_t e = 0; e < numerators.size(); ++e) {
    const PartialFraction pf = partial_fractions(numerators[e], poles, lead, tol.pole_merge);
    cplx q{}, c{};
    for (std::size_t k = 0; k < poles.size(); ++k) {
      q += pf.terms[k].residue * quantum_weight[k];
      c += pf.terms[k].residue * classical_weight[k];
    }
    total(static_cast<Eigen::Index>(e)) = (q + c).real();
    classical(static_cast<Eigen::Index>(e)) = c.real();
    imag_residue = std::max(imag_residue, std::abs((q + c).imag()));
  }

  CovarianceMatrix cov;
  cov.gamma = assemble(total);
  cov.params = p;
  cov.method = Method::Analytic;
  cov.error_estimate = imag_residue;
  cov.classical_part = assemble(classical);
  check_covariance(cov, tol);
  return cov;
}

CovarianceMatrix covariance(const ModelParams& p, Method method, const Tolerances& tol) {
  return method == Method::Analytic ? covariance_analytic(p, tol) : covariance_quadrature(p, tol);
}

}  // namespace qcorr
