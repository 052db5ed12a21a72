#pragma once

#include <Eigen/Dense>

#include "qcorr/tolerances.hpp"

// Two-mode Gaussian state measures.
//
// Inputs are covariance matrices Gamma over (x1, p1, x2, p2) with vacuum
// variance 1/2. Internally everything works on sigma = 2 Gamma, where a pure
// state has symplectic eigenvalues 1. Entropies and log-negativity are in nats.
namespace qcorr {

/// Local symplectic invariants of sigma = 2 Gamma.
struct SymplecticInvariants {
  double a;  // det of the mode-1 block
  double b;  // det of the mode-2 block
  double c;  // det of the 1-2 correlation block
  double d;  // det sigma
};

struct SymplecticEigenvalues {
  double nu_minus;
  double nu_plus;
};

struct CorrelationReport {
  double log_negativity = 0.0;
  double discord_mode2 = 0.0;
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  double nu_tilde_minus = 0.0;
  double purity_global = 0.0;
  double purity_mode1 = 0.0;
  double purity_mode2 = 0.0;
  double eta_plus_var = 0.0;   // <eta+^2>, eta+- = (x1 +- x2)/sqrt2
  double eta_minus_var = 0.0;
  double pi_plus_var = 0.0;    // <pi+^2>, pi+- = (p1 +- p2)/sqrt2
  double pi_minus_var = 0.0;
  /// 2 sqrt(<eta-^2><pi+^2>); below 1 signals entanglement for decoupled EPR modes.
  double epr_proxy = 0.0;
};

SymplecticInvariants symplectic_invariants(const Eigen::Matrix4d& gamma);

/// nu_-+^2 = (Delta -+ sqrt(Delta^2 - 4D))/2 with Delta = A + B + 2C.
/// Throws UnphysicalState if det sigma <= 0 or nu_- < 1 - tol.symplectic.
SymplecticEigenvalues symplectic_eigenvalues(const Eigen::Matrix4d& gamma, const Tolerances& tol = {});

/// Smallest symplectic eigenvalue of the partial transpose (Delta~ = A + B - 2C).
double pt_lowest_symplectic(const Eigen::Matrix4d& gamma);

/// E_N = max(0, -ln nu~_-).
double log_negativity(const Eigen::Matrix4d& gamma, const Tolerances& tol = {});

/// f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2), the entropy of a
/// single-mode Gaussian state with symplectic eigenvalue x.
double gaussian_entropy(double x) noexcept;

/// Minimal conditional determinant of mode 1 over Gaussian measurements on mode 2,
/// from the invariants alone. Near pure states this loses about half the digits;
/// gaussian_discord_mode2 evaluates the same branches from the matrix blocks.
double minimal_conditional_determinant(const SymplecticInvariants& inv) noexcept;

/// Gaussian quantum discord with the measurement on mode two.
double gaussian_discord_mode2(const Eigen::Matrix4d& gamma, const Tolerances& tol = {});

/// Same as above with the roles of the modes exchanged.
double gaussian_discord_mode1(const Eigen::Matrix4d& gamma, const Tolerances& tol = {});

/// Purities, EPR-variable variances and the EPR separability proxy.
/// Only those fields of the report are filled.
CorrelationReport purities_and_epr(const Eigen::Matrix4d& gamma);

/// Every measure at once.
CorrelationReport correlation_report(const Eigen::Matrix4d& gamma, const Tolerances& tol = {});

}  // namespace qcorr
