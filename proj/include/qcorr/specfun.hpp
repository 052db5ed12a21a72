#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qcorr/polynomial.hpp"

namespace qcorr {

/// Complex digamma function psi(z) = Gamma'(z)/Gamma(z).
///
/// Reflection for Re z < 1/2, upward recurrence until |z| >= 10, then the
/// Bernoulli asymptotic series through B14. Accurate to about 1e-14 relative
/// away from the zeros of psi. Throws Error(DigammaPole) at non-positive integers.
cplx digamma(cplx z);

/// coth(u), stable near the poles u = i*pi*n and for large |Re u|.
/// Throws Error(CothPole) when u lies on a pole.
cplx coth(cplx u);

/// x * coth(x) for real x, equal to 1 at x = 0.
double x_coth_x(double x) noexcept;

struct SimplePole {
  cplx pole;
  cplx residue;
};

/// Proper rational function written as sum_k r_k / (w - z_k).
struct PartialFraction {
  std::vector<SimplePole> terms;

  cplx operator()(cplx w) const noexcept;
  cplx residue_sum() const noexcept;
};

/// Decomposes numerator(w) / (lead * prod_k (w - poles[k])) into simple fractions.
///
/// Residues are numerator(z_k) / d'(z_k) with d'(z_k) = lead * prod_{j != k}(z_k - z_j).
/// Requires deg(numerator) < poles.size(). Throws Error(DegeneratePoles) when two
/// poles z_j, z_k are closer than merge_tol * max(|z_j|, |z_k|).
PartialFraction partial_fractions(const Polynomial& numerator, std::span<const cplx> poles,
                                  cplx denominator_leading, double merge_tol = 1e-7);

}  // namespace qcorr
