#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "qcorr/model.hpp"
#include "qcorr/specfun.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

enum class Method { Analytic, Quadrature };

std::string_view to_string(Method m) noexcept;

/// Stationary position power spectra at one real frequency.
struct PowerSpectrumEval {
  double omega = 0.0;
  /// Symmetrized <x_i x_j>_w = pi J(w) coth(w/2T) Re[s_i(w) conj(s_j(w))], s = alpha(w) (1,1)^T.
  Eigen::Matrix2d symmetric;
  /// The temperature-independent "1" part of <FF>_w: pi J(w) s(w) s(w)^dagger.
  /// It is odd in w on the diagonal and drops out of the symmetrized moments.
  Eigen::Matrix2cd vacuum_part;

  /// <p_i p_j>_w = w^2 <x_i x_j>_w.
  Eigen::Matrix2d momentum() const { return omega * omega * symmetric; }
  /// <p_i x_j>_w = -i w <x_i x_j>_w.
  Eigen::Matrix2cd momentum_position() const {
    return cplx(0.0, -omega) * symmetric.cast<cplx>();
  }
};

/// Asymptotic covariance matrix over R = (x1, p1, x2, p2), vacuum variance 1/2.
struct CovarianceMatrix {
  Eigen::Matrix4d gamma = Eigen::Matrix4d::Zero();
  ModelParams params;
  Method method = Method::Analytic;
  double error_estimate = 0.0;
  /// Analytic route only: the part linear in T (the classical mean values).
  /// The remainder gamma - classical_part is the digamma sum.
  std::optional<Eigen::Matrix4d> classical_part;

  double x(int i, int j) const { return gamma(2 * i, 2 * j); }
  double p(int i, int j) const { return gamma(2 * i + 1, 2 * j + 1); }
};

/// Throws UnphysicalState if the matrix is asymmetric, has a non-zero x-p
/// block, a non-positive diagonal or violates the uncertainty principle.
void check_covariance(const CovarianceMatrix& cov, const Tolerances& tol = {});

PowerSpectrumEval position_spectrum(const ModelParams& p, double omega, const Tolerances& tol = {});

/// Adaptive quadrature of the power spectra over the whole real axis.
///
/// The finite range is split at w = 0, near every resonance peak Re z_k and at
/// the cutoff; the tail [L, inf) is mapped onto (0, 1] by w = L/t. Throws
/// QuadratureNonConvergence when the requested error is not reached.
CovarianceMatrix covariance_quadrature(const ModelParams& p, const Tolerances& tol = {});

/// Residue / Matsubara evaluation of the same integrals.
///
/// The integrand w -> F(w) coth(w/2T) has F = g/(h(w)h(-w)), a proper rational
/// function with simple poles at +-z_k. After partial fractions
/// F = sum r_k/(w - p_k), the Matsubara ladder of coth sums to digamma terms:
///
///   Gamma = -(1/pi) [ sum_{Im p<0} r psi(1 + i p/2piT) + sum_{Im p>0} r psi(1 - i p/2piT) ]
///           + 2 i T sum_{Im p>0} r/p
///
/// with every digamma argument in Re >= 1. T = 0 uses the logarithmic limit.
CovarianceMatrix covariance_analytic(const ModelParams& p, const Tolerances& tol = {});

/// Dispatches on the method tag.
CovarianceMatrix covariance(const ModelParams& p, Method method, const Tolerances& tol = {});

}  // namespace qcorr
