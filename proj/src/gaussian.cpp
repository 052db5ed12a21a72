#include "qcorr/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

// nu^2 are the eigenvalues of the symmetric K = sigma^1/2 Omega^T sigma Omega sigma^1/2,
// which stay first-order accurate when nu_- and nu_+ nearly coincide.
SymplecticEigenvalues eigen_pair_symmetric(const Eigen::Matrix4d& sigma) {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> root(sigma);
  const Eigen::Matrix4d half = root.operatorSqrt();
  const Eigen::Matrix4d k = half * omega.transpose() * sigma * omega * half;
  const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(0.5 * (k + k.transpose()),
                                                                            Eigen::EigenvaluesOnly)
                                 .eigenvalues();
  return {std::sqrt(std::max(0.0, 0.5 * (ev(0) + ev(1)))), std::sqrt(std::max(0.0, 0.5 * (ev(2) + ev(3))))};
}

// Roots of x^2 - delta x + d = 0. The larger is taken directly and the smaller from the
// product d. Below a relative gap of 1e-4 the square root amplifies rounding in d, so
// the symmetric route takes over.
SymplecticEigenvalues eigen_pair(double delta, double d, const Eigen::Matrix4d& sigma) {
  const double disc = delta * delta - 4.0 * d;
  if (disc <= 1e-4 * delta * delta && sigma.allFinite()) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> check(sigma, Eigen::EigenvaluesOnly);
    if (check.eigenvalues()(0) > 0.0) return eigen_pair_symmetric(sigma);
  }
  const double plus_sq = 0.5 * (delta + std::sqrt(std::max(0.0, disc)));
  const double minus_sq = plus_sq > 0.0 ? d / plus_sq : 0.0;
  return {std::sqrt(std::max(0.0, minus_sq)), std::sqrt(std::max(0.0, plus_sq))};
}

Eigen::Matrix4d swap_modes(const Eigen::Matrix4d& g) {
  Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
  perm(0, 2) = perm(1, 3) = perm(2, 0) = perm(3, 1) = 1.0;
  return perm * g * perm.transpose();
}

}  // namespace

SymplecticInvariants symplectic_invariants(const Eigen::Matrix4d& gamma) {
  const Eigen::Matrix4d sigma = 2.0 * gamma;
  return {sigma.block<2, 2>(0, 0).determinant(), sigma.block<2, 2>(2, 2).determinant(),
          sigma.block<2, 2>(0, 2).determinant(), sigma.determinant()};
}

SymplecticEigenvalues symplectic_eigenvalues(const Eigen::Matrix4d& gamma, const Tolerances& tol) {
  const auto inv = symplectic_invariants(gamma);
  if (!(inv.d > 0.0)) throw Error(ErrorKind::UnphysicalState, "det sigma is not positive");
  const auto nu = eigen_pair(inv.a + inv.b + 2.0 * inv.c, inv.d, 2.0 * gamma);
  if (nu.nu_minus < 1.0 - tol.symplectic) {
    throw Error(ErrorKind::UnphysicalState,
                fmt::format("symplectic eigenvalue {:.12g} violates the uncertainty principle", nu.nu_minus));
  }
  return nu;
}

double pt_lowest_symplectic(const Eigen::Matrix4d& gamma) {
  const auto inv = symplectic_invariants(gamma);
  const Eigen::Matrix4d flip = Eigen::Vector4d(1.0, 1.0, 1.0, -1.0).asDiagonal();
  return eigen_pair(inv.a + inv.b - 2.0 * inv.c, inv.d, 2.0 * flip * gamma * flip).nu_minus;
}

double log_negativity(const Eigen::Matrix4d& gamma, const Tolerances& tol) {
  symplectic_eigenvalues(gamma, tol);
  return std::max(0.0, -std::log(pt_lowest_symplectic(gamma)));
}

double gaussian_entropy(double x) noexcept {
  if (x <= 1.0) return 0.0;
  const double up = 0.5 * (x + 1.0);
  const double down = 0.5 * (x - 1.0);
  return up * std::log(up) - down * std::log(down);
}

namespace {

Eigen::Matrix2d adjugate(const Eigen::Matrix2d& m) {
  Eigen::Matrix2d r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r;
}

// The two radicands of the E_min branches.
struct Radicands {
  double heterodyne;  // C^2 + (B - 1)(D - A)
  double homodyne;    // C^4 + (D - AB)^2 - 2 C^2 (AB + D)
};

double e_min(const SymplecticInvariants& inv, const Radicands& r) noexcept {
  const auto [a, b, c, d] = inv;
  const double c2 = c * c;
  const double bm1 = b - 1.0;
  // A pure measured mode cannot carry correlations: nothing to condition on.
  if (bm1 < 1e-12) return a;
  const double dab = d - a * b;
  if (dab * dab <= (1.0 + b) * c2 * (a + d)) {
    return (2.0 * c2 + bm1 * (d - a) + 2.0 * std::abs(c) * std::sqrt(std::max(0.0, r.heterodyne))) / (bm1 * bm1);
  }
  return (a * b - c2 + d - std::sqrt(std::max(0.0, r.homodyne))) / (2.0 * b);
}

// Both radicands vanish on pure states, where the invariant expressions lose
// half the digits. As matrix expressions they are
//   det((B - 1) alpha - gamma adj(beta) gamma^T)  and  (l1 - l2)^2,
// l_i the eigenvalues of gamma adj(beta) gamma^T adj(alpha), and the
// cancellation happens entrywise before any square root.
Radicands radicands(const Eigen::Matrix4d& sigma, const SymplecticInvariants& inv) {
  const Eigen::Matrix2d alpha = sigma.block<2, 2>(0, 0);
  const Eigen::Matrix2d beta = sigma.block<2, 2>(2, 2);
  const Eigen::Matrix2d g = sigma.block<2, 2>(0, 2);
  const Eigen::Matrix2d gbg = g * adjugate(beta) * g.transpose();
  const Eigen::Matrix2d m = gbg * adjugate(alpha);
  const double split = m(0, 0) - m(1, 1);
  return {((inv.b - 1.0) * alpha - gbg).determinant(), split * split + 4.0 * m(0, 1) * m(1, 0)};
}

}  // namespace

double minimal_conditional_determinant(const SymplecticInvariants& inv) noexcept {
  const auto [a, b, c, d] = inv;
  const double c2 = c * c;
  const double dab = d - a * b;
  return e_min(inv, {c2 + (b - 1.0) * (d - a), c2 * c2 + dab * dab - 2.0 * c2 * (a * b + d)});
}

double gaussian_discord_mode2(const Eigen::Matrix4d& gamma, const Tolerances& tol) {
  const auto nu = symplectic_eigenvalues(gamma, tol);
  const auto inv = symplectic_invariants(gamma);
  const double emin = e_min(inv, radicands(2.0 * gamma, inv));
  const double discord = gaussian_entropy(std::sqrt(inv.b)) - gaussian_entropy(nu.nu_plus) -
                         gaussian_entropy(nu.nu_minus) + gaussian_entropy(std::sqrt(std::max(emin, 1.0)));
  return std::max(0.0, discord);
}

double gaussian_discord_mode1(const Eigen::Matrix4d& gamma, const Tolerances& tol) {
  return gaussian_discord_mode2(swap_modes(gamma), tol);
}

CorrelationReport purities_and_epr(const Eigen::Matrix4d& gamma) {
  const auto inv = symplectic_invariants(gamma);
  CorrelationReport r;
  r.purity_global = 1.0 / std::sqrt(inv.d);
  r.purity_mode1 = 1.0 / std::sqrt(inv.a);
  r.purity_mode2 = 1.0 / std::sqrt(inv.b);
  r.eta_plus_var = 0.5 * (gamma(0, 0) + gamma(2, 2) + 2.0 * gamma(0, 2));
  r.eta_minus_var = 0.5 * (gamma(0, 0) + gamma(2, 2) - 2.0 * gamma(0, 2));
  r.pi_plus_var = 0.5 * (gamma(1, 1) + gamma(3, 3) + 2.0 * gamma(1, 3));
  r.pi_minus_var = 0.5 * (gamma(1, 1) + gamma(3, 3) - 2.0 * gamma(1, 3));
  r.epr_proxy = 2.0 * std::sqrt(r.eta_minus_var * r.pi_plus_var);
  return r;
}

CorrelationReport correlation_report(const Eigen::Matrix4d& gamma, const Tolerances& tol) {
  CorrelationReport r = purities_and_epr(gamma);
  const auto nu = symplectic_eigenvalues(gamma, tol);
  r.nu_minus = nu.nu_minus;
  r.nu_plus = nu.nu_plus;
  r.nu_tilde_minus = pt_lowest_symplectic(gamma);
  r.log_negativity = std::max(0.0, -std::log(r.nu_tilde_minus));
  r.discord_mode2 = gaussian_discord_mode2(gamma, tol);
  return r;
}

}  // namespace qcorr
