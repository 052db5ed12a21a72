#pragma once

#include <random>

#include <Eigen/Dense>

// Brute-force reference implementations for the Gaussian measures.
//
// These deliberately avoid the invariant formulas in gaussian.hpp so they can
// serve as independent checks. All matrices are covariance matrices Gamma over
// (x1, p1, x2, p2) with vacuum variance 1/2, unless named sigma.
namespace qcorr::oracle {

/// Omega = diag(J, J) with J = [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

/// Symplectic eigenvalues of sigma = 2 Gamma as |eig(i Omega sigma)|, ascending.
Eigen::Vector2d symplectic_eigenvalues(const Eigen::Matrix4d& gamma);

/// Smallest symplectic eigenvalue of the partial transpose (p2 -> -p2), by eigenvalues.
double pt_lowest_symplectic(const Eigen::Matrix4d& gamma);

/// Random symplectic matrix built from local squeezers, rotations, beam
/// splitters and two-mode squeezers.
Eigen::Matrix4d random_symplectic(std::mt19937_64& rng, double max_squeeze = 0.5);

/// Random physical Gamma = S diag(n1, n1, n2, n2) S^T / 2 with n_i >= 1.
Eigen::Matrix4d random_physical_gamma(std::mt19937_64& rng, double max_squeeze = 0.5);

/// Two-mode squeezed vacuum with squeezing r.
Eigen::Matrix4d two_mode_squeezed_vacuum(double r);

/// Local symplectic map: rotation by theta_i and squeezing r_i on each mode.
Eigen::Matrix4d local_symplectic(double theta1, double r1, double theta2, double r2);

struct DiscordGrid {
  int n_lambda = 121;          // log-spaced in [1e-3, 1e3]
  int n_theta = 72;            // [0, pi)
  bool refine = true;          // pattern search around the best grid point
};

/// Gaussian discord with measurement on mode two, minimised over pure
/// single-mode Gaussian measurements sigma_M = R(theta) diag(lambda, 1/lambda) R^T
/// plus the homodyne limits, from the conditional state
/// sigma_A|M = alpha - c (beta + sigma_M)^-1 c^T.
double discord_mode2_brute_force(const Eigen::Matrix4d& gamma, const DiscordGrid& grid = {});

}  // namespace qcorr::oracle
