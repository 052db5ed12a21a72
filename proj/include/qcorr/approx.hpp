#pragma once

#include <string>

#include <Eigen/Dense>

#include "qcorr/model.hpp"

namespace qcorr {

/// Two readings of the bracket in the weak-dissipation <x_i^2> formula:
///   LogMinusHalf:  (2wc - pi wi)/(wi^2 wc) + (4/wc^2)(log(wc/wi) - 1/2)
///   StandaloneHalf: (2wc - pi wi)/(wi^2 wc) + (4/wc^2) log(wc/wi) - 1/2
/// LogMinusHalf is the default. It is the reading that agrees with the exact
/// engine; the standalone -1/2 makes <x_i^2> grow with gamma, which it does not.
enum class XVarianceReading { LogMinusHalf, StandaloneHalf };

struct WeakDissipationEstimate {
  /// <x_i x_j> and <p_i p_j> entries over (x1, p1, x2, p2); the x-p block is zero.
  Eigen::Matrix4d gamma = Eigen::Matrix4d::Zero();
  /// Set when gamma/wc >= 0.01 or T > 0.1 min(w_i); the formulas are still evaluated.
  bool outside_validity = false;
  std::string warning;
};

/// First-order-in-gamma/wc, zero-temperature covariances for k = 0.
/// Throws InvalidArgument when k != 0.
WeakDissipationEstimate weak_dissipation_covariances(const ModelParams& p,
                                                     XVarianceReading reading = XVarianceReading::LogMinusHalf);

/// First-order roots of h for k = 0, gamma/wc << 1, in this library's sign
/// convention (roots in the lower half-plane):
///   +-w_i +- gamma wc/(w_i +- i wc)  (signs taken together)
///   -i wc + 2 i gamma wc^2 (w1^2 + w2^2 + 2 wc^2) / ((w1^2 + wc^2)(w2^2 + wc^2))
/// These are the complex conjugates of the expressions written with the
/// opposite Fourier convention. Residuals are filled with |h(z)|.
RootSet perturbative_roots(const ModelParams& p);

/// Closed two-oscillator model with potential [[w1^2, g], [g, w2^2]] (no bath).
struct EffectiveModelParams {
  double omega1 = 1.0;       // sqrt of the first diagonal potential entry
  double omega2 = 1.0;
  double coupling = 0.0;     // signed off-diagonal entry g
  double temperature = 0.0;
};

/// Maps the full model onto the closed one: w~_i^2 = w_i^2 + O^2 + k, g = O^2 - k.
EffectiveModelParams effective_params(const ModelParams& p);

/// Gibbs-state covariance of the closed model, from its normal modes.
/// Throws UnstablePotential if a normal-mode frequency^2 <= 0.
Eigen::Matrix4d effective_model_covariance(const EffectiveModelParams& e);

}  // namespace qcorr
