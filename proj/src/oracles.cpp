#include "qcorr/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qcorr/gaussian.hpp"

namespace qcorr::oracle {

namespace {

using Eigen::Matrix2d;
using Eigen::Matrix4d;

Matrix2d rotation(double theta) {
  Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Matrix4d beam_splitter(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  Matrix4d m = Matrix4d::Zero();
  m.block<2, 2>(0, 0) = c * Matrix2d::Identity();
  m.block<2, 2>(0, 2) = s * Matrix2d::Identity();
  m.block<2, 2>(2, 0) = -s * Matrix2d::Identity();
  m.block<2, 2>(2, 2) = c * Matrix2d::Identity();
  return m;
}

Matrix4d two_mode_squeezer(double r) {
  const Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  Matrix4d m = Matrix4d::Zero();
  m.block<2, 2>(0, 0) = std::cosh(r) * Matrix2d::Identity();
  m.block<2, 2>(0, 2) = std::sinh(r) * z;
  m.block<2, 2>(2, 0) = std::sinh(r) * z;
  m.block<2, 2>(2, 2) = std::cosh(r) * Matrix2d::Identity();
  return m;
}

struct Blocks {
  Matrix2d a, b, c;
};

Blocks split(const Matrix4d& gamma) {
  const Matrix4d sigma = 2.0 * gamma;
  return {sigma.block<2, 2>(0, 0), sigma.block<2, 2>(2, 2), sigma.block<2, 2>(0, 2)};
}

// det of the mode-1 state after a general-dyne outcome on mode 2.
double conditional_det(const Blocks& s, double log_lambda, double theta) {
  const double lambda = std::exp(log_lambda);
  const Matrix2d r = rotation(theta);
  const Matrix2d sm = r * Eigen::Vector2d(lambda, 1.0 / lambda).asDiagonal() * r.transpose();
  return (s.a - s.c * (s.b + sm).inverse() * s.c.transpose()).determinant();
}

// Homodyne limit: only the quadrature along w is learned.
double homodyne_det(const Blocks& s, double theta) {
  const Eigen::Vector2d w(std::cos(theta), std::sin(theta));
  const Eigen::Vector2d cw = s.c * w;
  return (s.a - cw * cw.transpose() / w.dot(s.b * w)).determinant();
}

}  // namespace

Matrix4d symplectic_form() {
  Matrix4d o = Matrix4d::Zero();
  o(0, 1) = o(2, 3) = 1.0;
  o(1, 0) = o(3, 2) = -1.0;
  return o;
}

Eigen::Vector2d symplectic_eigenvalues(const Matrix4d& gamma) {
  const Eigen::Matrix4cd m =
      std::complex<double>(0.0, 1.0) * (symplectic_form() * (2.0 * gamma)).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m, false);
  std::array<double, 4> mag{};
  for (int i = 0; i < 4; ++i) mag[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
  std::sort(mag.begin(), mag.end());
  return {0.5 * (mag[0] + mag[1]), 0.5 * (mag[2] + mag[3])};
}

double pt_lowest_symplectic(const Matrix4d& gamma) {
  const Matrix4d flip = Eigen::Vector4d(1.0, 1.0, 1.0, -1.0).asDiagonal();
  return symplectic_eigenvalues(flip * gamma * flip)(0);
}

Matrix4d random_symplectic(std::mt19937_64& rng, double max_squeeze) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-max_squeeze, max_squeeze);
  auto local = [&] { return local_symplectic(angle(rng), squeeze(rng), angle(rng), squeeze(rng)); };
  return local() * beam_splitter(angle(rng)) * local() * two_mode_squeezer(squeeze(rng)) * local();
}

Matrix4d random_physical_gamma(std::mt19937_64& rng, double max_squeeze) {
  std::exponential_distribution<double> excess(1.0);
  const double n1 = 1.0 + excess(rng);
  const double n2 = 1.0 + excess(rng);
  const Matrix4d s = random_symplectic(rng, max_squeeze);
  const Matrix4d d = Eigen::Vector4d(n1, n1, n2, n2).asDiagonal();
  const Matrix4d sigma = s * d * s.transpose();
  return 0.25 * (sigma + sigma.transpose());
}

Matrix4d two_mode_squeezed_vacuum(double r) {
  const Matrix4d s = two_mode_squeezer(r);
  return 0.5 * s * s.transpose();
}

Matrix4d local_symplectic(double theta1, double r1, double theta2, double r2) {
  Matrix4d m = Matrix4d::Zero();
  m.block<2, 2>(0, 0) = rotation(theta1) * Eigen::Vector2d(std::exp(-r1), std::exp(r1)).asDiagonal();
  m.block<2, 2>(2, 2) = rotation(theta2) * Eigen::Vector2d(std::exp(-r2), std::exp(r2)).asDiagonal();
  return m;
}

double discord_mode2_brute_force(const Matrix4d& gamma, const DiscordGrid& grid) {
  const Blocks s = split(gamma);
  const double pi = std::numbers::pi;
  const double lo = std::log(1e-3), hi = std::log(1e3);

  double best = std::numeric_limits<double>::infinity();
  double best_u = 0.0, best_theta = 0.0;
  bool best_homodyne = false;
  for (int j = 0; j < grid.n_theta; ++j) {
    const double theta = pi * j / grid.n_theta;
    for (int i = 0; i < grid.n_lambda; ++i) {
      const double u = lo + (hi - lo) * i / (grid.n_lambda - 1);
      const double v = conditional_det(s, u, theta);
      if (v < best) {
        best = v;
        best_u = u;
        best_theta = theta;
        best_homodyne = false;
      }
    }
    const double v = homodyne_det(s, theta);
    if (v < best) {
      best = v;
      best_theta = theta;
      best_homodyne = true;
    }
  }

  if (grid.refine) {
    double du = (hi - lo) / (grid.n_lambda - 1);
    double dt = pi / grid.n_theta;
    while (dt > 1e-10) {
      bool moved = false;
      for (int su = -1; su <= 1; ++su) {
        for (int st = -1; st <= 1; ++st) {
          if (su == 0 && st == 0) continue;
          if (best_homodyne && su != 0) continue;
          const double u = std::clamp(best_u + su * du, -35.0, 35.0);
          const double t = best_theta + st * dt;
          const double v = best_homodyne ? homodyne_det(s, t) : conditional_det(s, u, t);
          if (v < best) {
            best = v;
            best_u = u;
            best_theta = t;
            moved = true;
          }
        }
      }
      if (!moved) {
        du *= 0.5;
        dt *= 0.5;
      }
    }
  }

  const Eigen::Vector2d nu = symplectic_eigenvalues(gamma);
  const double discord = gaussian_entropy(std::sqrt(s.b.determinant())) - gaussian_entropy(nu(0)) -
                         gaussian_entropy(nu(1)) + gaussian_entropy(std::sqrt(std::max(best, 1.0)));
  return std::max(0.0, discord);
}

}  // namespace qcorr::oracle
