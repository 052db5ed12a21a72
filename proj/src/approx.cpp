#include "qcorr/approx.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

double x_variance(double w, double gamma, double wc, XVarianceReading reading) {
  const double first = (2.0 * wc - pi * w) / (w * w * wc);
  const double log_term = std::log(wc / w);
  const double bracket = reading == XVarianceReading::LogMinusHalf
                             ? first + 4.0 / (wc * wc) * (log_term - 0.5)
                             : first + 4.0 / (wc * wc) * log_term - 0.5;
  return 1.0 / (2.0 * w) - gamma / (2.0 * pi) * bracket;
}

double p_variance(double w, double gamma, double wc) {
  return 0.5 * w + gamma / (2.0 * pi) * (3.0 * pi * w / wc - 2.0 + 4.0 * std::log(wc / w));
}

}  // namespace

WeakDissipationEstimate weak_dissipation_covariances(const ModelParams& p, XVarianceReading reading) {
  if (p.k != 0.0) throw Error(ErrorKind::InvalidArgument, "weak-dissipation formulas require k = 0");
  const double w1 = p.omega1, w2 = p.omega2, g = p.gamma, wc = p.omega_c;

  WeakDissipationEstimate out;
  auto& m = out.gamma;
  m(0, 0) = x_variance(w1, g, wc, reading);
  m(2, 2) = x_variance(w2, g, wc, reading);
  m(1, 1) = p_variance(w1, g, wc);
  m(3, 3) = p_variance(w2, g, wc);
  const double detuning = w1 * w1 - w2 * w2;
  m(0, 2) = m(2, 0) = g / (pi * detuning) * 2.0 * std::log(w2 / w1);
  m(1, 3) = m(3, 1) = g * std::log(16.0) / (2.0 * pi) +
                      g * (w1 * w1 * std::log(wc * wc / (4.0 * w1 * w1)) -
                           w2 * w2 * std::log(wc * wc / (4.0 * w2 * w2))) /
                          (pi * detuning);

  if (g / wc >= 0.01 || p.temperature > 0.1 * std::min(w1, w2)) {
    out.outside_validity = true;
    out.warning = fmt::format("DomainWarning: gamma/omega_c={:.3g}, T/min(omega_i)={:.3g} outside the "
                              "weak-dissipation, low-temperature region",
                              g / wc, p.temperature / std::min(w1, w2));
  }
  return out;
}

RootSet perturbative_roots(const ModelParams& p) {
  const double wc = p.omega_c, g = p.gamma;
  RootSet out;
  for (double w : {p.omega1, p.omega2}) {
    out.roots.push_back(w + g * wc / (w + I * wc));
    out.roots.push_back(-w - g * wc / (w - I * wc));
  }
  const double w1s = p.omega1 * p.omega1, w2s = p.omega2 * p.omega2, wcs = wc * wc;
  out.roots.push_back(-I * wc + 2.0 * I * g * wcs * (w1s + w2s + 2.0 * wcs) / ((w1s + wcs) * (w2s + wcs)));

  const CharacteristicPolynomial h = build_h_polynomial(p);
  for (const auto& z : out.roots) {
    out.multiplicity.push_back(1);
    out.residual.push_back(std::abs(h(z)));
  }
  return out;
}

EffectiveModelParams effective_params(const ModelParams& p) {
  const double o2 = p.renormalization();
  return {std::sqrt(p.omega1 * p.omega1 + o2 + p.k), std::sqrt(p.omega2 * p.omega2 + o2 + p.k), o2 - p.k,
          p.temperature};
}

Eigen::Matrix4d effective_model_covariance(const EffectiveModelParams& e) {
  Eigen::Matrix2d v;
  v << e.omega1 * e.omega1, e.coupling, e.coupling, e.omega2 * e.omega2;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(v);
  const Eigen::Vector2d freq_sq = solver.eigenvalues();
  if (freq_sq.minCoeff() <= 0.0) {
    throw Error(ErrorKind::UnstablePotential,
                fmt::format("normal-mode frequency^2 {:.6g} is not positive", freq_sq.minCoeff()));
  }
  Eigen::Vector2d qvar, pvar;
  for (int m = 0; m < 2; ++m) {
    const double w = std::sqrt(freq_sq(m));
    const double occupation = e.temperature > 0.0 ? 1.0 / std::tanh(w / (2.0 * e.temperature)) : 1.0;
    qvar(m) = occupation / (2.0 * w);
    pvar(m) = 0.5 * w * occupation;
  }
  const Eigen::Matrix2d q = solver.eigenvectors();
  const Eigen::Matrix2d xx = q * qvar.asDiagonal() * q.transpose();
  const Eigen::Matrix2d pp = q * pvar.asDiagonal() * q.transpose();

  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      g(2 * i, 2 * j) = xx(i, j);
      g(2 * i + 1, 2 * j + 1) = pp(i, j);
    }
  }
  return g;
}

}  // namespace qcorr
