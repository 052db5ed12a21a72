#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/polynomial.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

/// Physical parameters of two detuned oscillators in a common Ohmic bath
/// with Lorentz-Drude cutoff, in units hbar = k_B = 1.
struct ModelParams {
  double omega1 = 10.0;
  double omega2 = 4.0;
  double k = 0.0;            // direct coupling, k/2 (x1 - x2)^2
  double gamma = 0.01;       // dissipation rate
  double omega_c = 500.0;    // bath cutoff
  double temperature = 0.5;

  /// Counterterm Omega^2 = 2 gamma omega_c.
  double renormalization() const noexcept { return 2.0 * gamma * omega_c; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

using ComplexMatrix2 = Eigen::Matrix2cd;
using CharacteristicPolynomial = Polynomial;

/// Roots of h(w) with their plug-back residuals.
struct RootSet {
  std::vector<cplx> roots;
  std::vector<int> multiplicity;
  std::vector<double> residual;  // |h(z_k)|
};

/// Returns p unchanged if it satisfies the parameter contract.
///
/// Throws NonPositiveFrequency, NegativeRate (gamma, temperature),
/// NegativeCoupling (k), InvalidArgument (non-finite) or ResonantParams when
/// |w1 - w2| <= tol.resonance * min(w1, w2).
ModelParams validate_params(const ModelParams& p, const Tolerances& tol = {});

/// J(w) = 2 gamma w / (pi (1 + w^2/wc^2)).
double spectral_density(const ModelParams& p, double omega) noexcept;

/// chi(w) = 2 gamma wc^2 / (wc - i w). Throws KernelPole near w = -i wc.
cplx dissipative_kernel(const ModelParams& p, cplx omega, const Tolerances& tol = {});

ComplexMatrix2 inverse_susceptibility(const ModelParams& p, cplx omega, const Tolerances& tol = {});

/// alpha(w), the inverse of inverse_susceptibility. Throws SingularAtFrequency on a pole.
ComplexMatrix2 susceptibility(const ModelParams& p, cplx omega, const Tolerances& tol = {});

/// h(w) = det(alpha^-1(w)) (wc - i w), a degree-5 polynomial.
///
/// The chi^2 terms cancel in the determinant, so with a = w1^2 + O^2 + k - w^2,
/// b = w2^2 + O^2 + k - w^2 and c = O^2 - k,
///   h(w) = (a b - c^2)(wc - i w) - (a + b - 2c) 2 gamma wc^2.
CharacteristicPolynomial build_h_polynomial(const ModelParams& p);

/// The five roots of h, from companion-matrix eigenvalues polished by Newton.
///
/// Throws RootFindingFailure if a residual exceeds tol.root_residual * sum_m |c_m||z|^m
/// and NearRealAxisRoot if |Im z| < tol.real_axis * real_axis_scale for any root.
RootSet find_roots(const CharacteristicPolynomial& h, double real_axis_scale, const Tolerances& tol = {});

/// Convenience: roots of h for validated params, scaled by max(w1, w2, 1).
RootSet find_roots(const ModelParams& p, const Tolerances& tol = {});

}  // namespace qcorr
