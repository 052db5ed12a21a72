#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  int max_intervals = 20000;
};

template <int N>
struct QuadratureResult {
  Eigen::Matrix<double, N, 1> value;
  Eigen::Matrix<double, N, 1> error;
  int intervals = 0;
  bool converged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600259054714, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <int N>
struct Segment {
  double a, b;
  Eigen::Matrix<double, N, 1> value, error;
  double priority;
  bool operator<(const Segment& o) const { return priority < o.priority; }
};

template <int N, class F>
void kronrod21(F& f, double a, double b, Eigen::Matrix<double, N, 1>& value,
               Eigen::Matrix<double, N, 1>& error) {
  using Vec = Eigen::Matrix<double, N, 1>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Vec centre = f(mid);
  Vec kronrod = kKronrodWeights[10] * centre;
  Vec gauss = Vec::Zero();
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(j)];
    const Vec sum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[static_cast<std::size_t>(j)] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(j / 2)] * sum;
  }
  value = half * kronrod;
  error = (half * (kronrod - gauss)).cwiseAbs();
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (10/21) integration of a vector-valued
/// function over the finite intervals between consecutive breakpoints.
///
/// Every component must satisfy error <= max(abs_tol, rel_tol * scale_i), where
/// scale(total) gives the magnitude each component is judged against (|value| by
/// default). The segment with the largest error-to-tolerance ratio is bisected first.
template <int N, class F, class Scale>
QuadratureResult<N> integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                       const QuadratureOptions& opts, Scale&& scale) {
  using Vec = Eigen::Matrix<double, N, 1>;
  using Seg = detail::Segment<N>;

  Vec total = Vec::Zero();
  Vec total_err = Vec::Zero();
  std::vector<Seg> segs;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    Seg s{breakpoints[i], breakpoints[i + 1], Vec::Zero(), Vec::Zero(), 0.0};
    detail::kronrod21<N>(f, s.a, s.b, s.value, s.error);
    total += s.value;
    total_err += s.error;
    segs.push_back(s);
  }

  auto tolerance = [&](const Vec& t) -> Vec {
    const Vec magnitude = scale(t);
    return (opts.rel_tol * magnitude).cwiseMax(Vec::Constant(opts.abs_tol));
  };
  auto priority = [&](const Seg& s, const Vec& tol) { return (s.error.array() / tol.array()).maxCoeff(); };

  std::priority_queue<Seg> queue;
  {
    const Vec tol = tolerance(total);
    for (auto& s : segs) {
      s.priority = priority(s, tol);
      queue.push(s);
    }
  }

  QuadratureResult<N> out;
  std::vector<Seg> frozen;
  int count = static_cast<int>(segs.size());
  while (!queue.empty()) {
    const Vec tol = tolerance(total);
    if ((total_err.array() <= tol.array()).all()) {
      out.converged = true;
      break;
    }
    if (count >= opts.max_intervals) break;
    Seg s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {
      // Cannot split further in double precision; accept the segment as is.
      frozen.push_back(s);
      continue;
    }
    Seg left{s.a, mid, Vec::Zero(), Vec::Zero(), 0.0};
    Seg right{mid, s.b, Vec::Zero(), Vec::Zero(), 0.0};
    detail::kronrod21<N>(f, left.a, left.b, left.value, left.error);
    detail::kronrod21<N>(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - s.value;
    total_err += left.error + right.error - s.error;
    total_err = total_err.cwiseMax(Vec::Zero());
    left.priority = priority(left, tol);
    right.priority = priority(right, tol);
    queue.push(left);
    queue.push(right);
    ++count;
  }
  if (queue.empty()) out.converged = (total_err.array() <= tolerance(total).array()).all();

  // Recompute the totals from the surviving segments to shed accumulated rounding.
  Vec value = Vec::Zero();
  Vec error = Vec::Zero();
  for (const auto& s : frozen) {
    value += s.value;
    error += s.error;
  }
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  out.value = value;
  out.error = error;
  out.intervals = count;
  return out;
}

template <int N, class F>
QuadratureResult<N> integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                       const QuadratureOptions& opts = {}) {
  return integrate_adaptive<N>(std::forward<F>(f), breakpoints, opts,
                               [](const Eigen::Matrix<double, N, 1>& t) { return t.cwiseAbs().eval(); });
}

}  // namespace qcorr
