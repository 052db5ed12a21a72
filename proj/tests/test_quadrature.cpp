#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qcorr/quadrature.hpp"

using namespace qcorr;

using Vec2 = Eigen::Matrix<double, 2, 1>;

TEST_CASE("smooth integrands") {
  auto f = [](double x) {
    Vec2 v;
    v << std::sin(x), std::exp(-x);
    return v;
  };
  const auto r = integrate_adaptive<2>(f, {0.0, std::numbers::pi});
  CHECK(r.converged);
  CHECK(std::abs(r.value(0) - 2.0) < 1e-13);
  CHECK(std::abs(r.value(1) - (1.0 - std::exp(-std::numbers::pi))) < 1e-13);
}

TEST_CASE("narrow Lorentzian peak") {
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    auto f = [eps](double x) {
      Eigen::Matrix<double, 1, 1> v;
      v << eps / ((x - 1.0) * (x - 1.0) + eps * eps);
      return v;
    };
    const double exact = std::atan(9.0 / eps) + std::atan(11.0 / eps);
    // Breakpoint at the peak, as the covariance code does.
    const auto r = integrate_adaptive<1>(f, {-10.0, 1.0, 10.0});
    CHECK(r.converged);
    CHECK(std::abs(r.value(0) - exact) <= 1e-11 * exact);
  }
}

TEST_CASE("empty and degenerate breakpoint lists") {
  auto f = [](double) {
    Eigen::Matrix<double, 1, 1> v;
    v << 1.0;
    return v;
  };
  const auto r = integrate_adaptive<1>(f, {0.0, 0.0, 2.0, 3.0});
  CHECK(std::abs(r.value(0) - 3.0) < 1e-15);
}

TEST_CASE("scale functor controls tiny components") {
  // Second component integrates to ~0; judged against the first it converges quickly.
  auto f = [](double x) {
    Vec2 v;
    v << 1.0 + x * x, std::sin(20.0 * x) * 1e-3;
    return v;
  };
  auto scale = [](const Vec2& t) -> Vec2 { return Vec2::Constant(std::abs(t(0))); };
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 0.0;
  const auto r = integrate_adaptive<2>(f, {-std::numbers::pi, std::numbers::pi}, opts, scale);
  CHECK(r.converged);
  CHECK(std::abs(r.value(1)) < 1e-14);
}

TEST_CASE("interval budget exhausted") {
  auto f = [](double x) {
    Eigen::Matrix<double, 1, 1> v;
    v << 1.0 / std::sqrt(x);
    return v;
  };
  QuadratureOptions opts;
  opts.max_intervals = 3;
  const auto r = integrate_adaptive<1>(f, {0.0, 1.0}, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.intervals <= 3);
}
