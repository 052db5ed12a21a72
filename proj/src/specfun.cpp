#include "qcorr/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double pi = std::numbers::pi;

// B_{2n} / (2n), n = 1..7
constexpr std::array<double, 7> kAsymptotic = {
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
};

// cot(pi z) without overflow for large |Im z|.
cplx cot_pi(cplx z) {
  const double x = 2.0 * pi * z.real();
  const double y = 2.0 * pi * z.imag();
  if (std::abs(y) > 40.0) return {0.0, y > 0 ? -1.0 : 1.0};
  const double denom = std::cosh(y) - std::cos(x);
  return {std::sin(x) / denom, -std::sinh(y) / denom};
}

cplx digamma_asymptotic(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series{};
  cplx power = inv2;
  for (double c : kAsymptotic) {
    series += c * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - series;
}

}  // namespace

cplx digamma(cplx z) {
  if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-13) {
    const double n = std::round(z.real());
    if (std::abs(z.real() - n) < 1e-13 * std::max(1.0, std::abs(n))) {
      throw Error(ErrorKind::DigammaPole, fmt::format("psi has a pole at z = {}", n));
    }
  }
  if (z.real() < 0.5) return digamma(1.0 - z) - pi * cot_pi(z);

  cplx shift{};
  while (std::abs(z) < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  return shift + digamma_asymptotic(z);
}

cplx coth(cplx u) {
  // coth has period i*pi; reduce so that |Im u| <= pi/2.
  const double n = std::round(u.imag() / pi);
  const cplx r = u - cplx(0.0, n * pi);
  if (std::abs(r) < 1e-15 * std::max(1.0, std::abs(u))) {
    throw Error(ErrorKind::CothPole, fmt::format("coth has a pole at i*pi*{}", n));
  }
  if (std::abs(r) < 1e-4) return 1.0 / r + r / 3.0 - r * r * r / 45.0;
  if (r.real() < 0.0) return -coth(-r);
  if (r.real() > 20.0) {
    const cplx e = std::exp(-2.0 * r);
    return (1.0 + e) / (1.0 - e);
  }
  return std::cosh(r) / std::sinh(r);
}

double x_coth_x(double x) noexcept {
  const double a = std::abs(x);
  if (a < 1e-4) return 1.0 + a * a / 3.0;
  if (a > 20.0) return a;  // coth(20) = 1 - 8.5e-18
  return a / std::tanh(a);
}

cplx PartialFraction::operator()(cplx w) const noexcept {
  cplx acc{};
  for (const auto& t : terms) acc += t.residue / (w - t.pole);
  return acc;
}

cplx PartialFraction::residue_sum() const noexcept {
  cplx acc{};
  for (const auto& t : terms) acc += t.residue;
  return acc;
}

PartialFraction partial_fractions(const Polynomial& numerator, std::span<const cplx> poles,
                                  cplx denominator_leading, double merge_tol) {
  if (poles.empty()) throw Error(ErrorKind::InvalidArgument, "partial_fractions needs at least one pole");
  if (numerator.degree() >= static_cast<int>(poles.size())) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("numerator degree {} is not below denominator degree {}", numerator.degree(),
                            poles.size()));
  }
  PartialFraction pf;
  pf.terms.reserve(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) {
    cplx dprime = denominator_leading;
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j == k) continue;
      const cplx gap = poles[k] - poles[j];
      const double min_sep = merge_tol * std::max({std::abs(poles[k]), std::abs(poles[j]), 1e-300});
      if (std::abs(gap) <= min_sep) {
        throw Error(ErrorKind::DegeneratePoles,
                    fmt::format("poles ({:.9g},{:.9g}) and ({:.9g},{:.9g}) are closer than {:.3g}",
                                poles[k].real(), poles[k].imag(), poles[j].real(), poles[j].imag(),
                                min_sep));
      }
      dprime *= gap;
    }
    pf.terms.push_back({poles[k], numerator(poles[k]) / dprime});
  }
  return pf;
}

}  // namespace qcorr
