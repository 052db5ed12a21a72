#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "qcorr/cli.hpp"
#include "qcorr/errors.hpp"

namespace qcorr::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("bad {} '{}'", what, s));
  }
  return v;
}

CorrelationReport failed_report() {
  CorrelationReport r;
  r.log_negativity = r.discord_mode2 = r.nu_minus = r.nu_plus = r.nu_tilde_minus = nan;
  r.purity_global = r.purity_mode1 = r.purity_mode2 = nan;
  r.eta_plus_var = r.eta_minus_var = r.pi_plus_var = r.pi_minus_var = r.epr_proxy = nan;
  return r;
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{}", v);
}

void write_header(std::ostream& os, const SweepGrid& grid, const std::vector<std::string>& notes) {
  const ModelParams& p = grid.base;
  os << "# qcorr sweep\n";
  os << fmt::format("# fixed: omega1={} omega2={} k={} gamma={} omega_c={} temperature={}\n", p.omega1,
                    p.omega2, p.k, p.gamma, p.omega_c, p.temperature);
  auto axis_line = [&](std::string_view label, const GridAxis& a) {
    os << fmt::format("# {}: {} lo={} hi={} n={}\n", label, to_string(a.axis), a.lo, a.hi, a.n);
  };
  axis_line("axis1", grid.axis1);
  if (grid.axis2) {
    axis_line("axis2", *grid.axis2);
  } else {
    os << "# axis2: none\n";
  }
  os << "# method: " << to_string(grid.method) << "\n";
  os << "# rows: axis2-major; failed points carry nan and are listed after the data\n";
  for (const auto& n : notes) os << "# note: " << n << "\n";
}

}  // namespace

MethodChoice parse_method(std::string_view s) {
  if (s == "analytic") return MethodChoice::Analytic;
  if (s == "quadrature") return MethodChoice::Quadrature;
  if (s == "both") return MethodChoice::Both;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown method '{}'", s));
}

std::string_view to_string(MethodChoice m) noexcept {
  switch (m) {
    case MethodChoice::Analytic: return "analytic";
    case MethodChoice::Quadrature: return "quadrature";
    case MethodChoice::Both: return "both";
  }
  return "?";
}

Axis parse_axis(std::string_view s) {
  if (s == "k") return Axis::K;
  if (s == "omega2") return Axis::Omega2;
  if (s == "temperature" || s == "temp") return Axis::Temperature;
  if (s == "gamma") return Axis::Gamma;
  throw Error(ErrorKind::InvalidArgument, fmt::format("unknown axis '{}' (k, omega2, temperature, gamma)", s));
}

std::string_view to_string(Axis a) noexcept {
  switch (a) {
    case Axis::K: return "k";
    case Axis::Omega2: return "omega2";
    case Axis::Temperature: return "temperature";
    case Axis::Gamma: return "gamma";
  }
  return "?";
}

void set_axis(ModelParams& p, Axis a, double value) noexcept {
  switch (a) {
    case Axis::K: p.k = value; break;
    case Axis::Omega2: p.omega2 = value; break;
    case Axis::Temperature: p.temperature = value; break;
    case Axis::Gamma: p.gamma = value; break;
  }
}

double GridAxis::value(int i) const noexcept {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

GridAxis parse_grid_axis(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("grid '{}' is not axis:lo:hi:n", spec));
  }
  GridAxis g;
  g.axis = parse_axis(parts[0]);
  g.lo = parse_double(parts[1], "grid lower bound");
  g.hi = parse_double(parts[2], "grid upper bound");
  int n = 0;
  const auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), n);
  if (ec != std::errc{} || ptr != parts[3].data() + parts[3].size()) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("bad grid point count '{}'", parts[3]));
  }
  g.n = n;
  if (g.n < 2) throw Error(ErrorKind::InvalidArgument, "grid point count must be at least 2");
  if (!(g.hi > g.lo)) throw Error(ErrorKind::InvalidArgument, "grid upper bound must exceed the lower bound");
  const double lo = std::min(g.lo, g.hi);
  if (g.axis == Axis::Omega2 && lo <= 0.0) {
    throw Error(ErrorKind::NonPositiveFrequency, "omega2 grid must stay positive");
  }
  if (g.axis == Axis::K && lo < 0.0) throw Error(ErrorKind::NegativeCoupling, "k grid must be non-negative");
  if ((g.axis == Axis::Gamma || g.axis == Axis::Temperature) && lo < 0.0) {
    throw Error(ErrorKind::NegativeRate, fmt::format("{} grid must be non-negative", to_string(g.axis)));
  }
  return g;
}

ModelParams SweepGrid::params_at(int t) const noexcept {
  ModelParams p = base;
  set_axis(p, axis1.axis, axis1.value(t % axis1.n));
  if (axis2) set_axis(p, axis2->axis, axis2->value(t / axis1.n));
  return p;
}

std::optional<double> SweepGrid::axis2_at(int t) const noexcept {
  if (!axis2) return std::nullopt;
  return axis2->value(t / axis1.n);
}

SweepGrid figure_grid(const ModelParams& base) {
  SweepGrid g;
  g.base = base;
  g.axis1 = GridAxis{Axis::K, 0.0, 200.0, 100};
  g.axis2 = GridAxis{Axis::Omega2, 0.1, 10.0, 100};
  return g;
}

std::string_view to_string(PointStatus s) noexcept {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::SkippedResonant: return "skipped_resonant";
    case PointStatus::Failed: return "failed";
  }
  return "?";
}

CorrelationReport evaluate_point(const ModelParams& p, Method method, const Tolerances& tol) {
  return correlation_report(covariance(p, method, tol).gamma, tol);
}

double covariance_error_ratio(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b, const Tolerances& tol) {
  const Eigen::Matrix4d allowed = (tol.cross_method_rel * a.cwiseAbs()).array() + tol.cross_method_abs;
  return ((a - b).cwiseAbs().array() / allowed.array()).maxCoeff();
}

SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& opts) {
  const int n = grid.point_count();
  std::vector<Method> methods;
  if (grid.method != MethodChoice::Quadrature) methods.push_back(Method::Analytic);
  if (grid.method != MethodChoice::Analytic) methods.push_back(Method::Quadrature);
  const auto per_point = static_cast<int>(methods.size());

  SweepResult result;
  result.records.resize(static_cast<std::size_t>(n * per_point));

  auto evaluate = [&](int t) {
    const ModelParams p = grid.params_at(t);
    for (int m = 0; m < per_point; ++m) {
      SweepRecord& r = result.records[static_cast<std::size_t>(t * per_point + m)];
      r.index = t;
      r.axis1 = grid.axis1_at(t);
      r.axis2 = grid.axis2_at(t);
      r.method = methods[static_cast<std::size_t>(m)];
      try {
        r.report = evaluate_point(p, r.method, opts.tol);
        r.status = PointStatus::Ok;
      } catch (const Error& e) {
        r.report = failed_report();
        r.status = e.kind() == ErrorKind::ResonantParams ? PointStatus::SkippedResonant : PointStatus::Failed;
        r.message = e.what();
      }
    }
  };

  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::mutex progress_mutex;
  const int step = std::max(1, n / 10);
  auto worker = [&] {
    for (int t = next++; t < n; t = next++) {
      evaluate(t);
      const int d = ++done;
      if (opts.progress && (d % step == 0 || d == n)) {
        const std::lock_guard lock(progress_mutex);
        *opts.progress << fmt::format("sweep: {}/{} points\n", d, n);
      }
    }
  };
  const int workers = std::clamp(opts.workers, 1, std::max(1, n));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (int t = 0; t < n; ++t) {
    bool failed = false, skipped = false;
    for (int m = 0; m < per_point; ++m) {
      const auto status = result.records[static_cast<std::size_t>(t * per_point + m)].status;
      failed = failed || status == PointStatus::Failed;
      skipped = skipped || status == PointStatus::SkippedResonant;
    }
    result.failed_points += failed ? 1 : 0;
    result.skipped_points += skipped ? 1 : 0;
  }

  if (opts.spot_check && grid.method == MethodChoice::Analytic) {
    std::vector<int> candidates;
    for (int t = 0; t < n; ++t) {
      if (result.records[static_cast<std::size_t>(t)].status == PointStatus::Ok) candidates.push_back(t);
    }
    std::vector<int> chosen;
    const auto count = static_cast<std::size_t>(std::max(1, n / 50));
    std::mt19937_64 rng(opts.seed);
    std::sample(candidates.begin(), candidates.end(), std::back_inserter(chosen), count, rng);
    for (int t : chosen) {
      SpotCheck c;
      c.index = t;
      const ModelParams p = grid.params_at(t);
      try {
        const CovarianceMatrix a = covariance(p, Method::Analytic, opts.tol);
        const CovarianceMatrix q = covariance(p, Method::Quadrature, opts.tol);
        c.entry_error_ratio = covariance_error_ratio(a.gamma, q.gamma, opts.tol);
        const auto ra = correlation_report(a.gamma, opts.tol);
        const auto rq = correlation_report(q.gamma, opts.tol);
        c.log_negativity_diff = std::abs(ra.log_negativity - rq.log_negativity);
        c.discord_diff = std::abs(ra.discord_mode2 - rq.discord_mode2);
        c.passed = c.entry_error_ratio <= 1.0 && c.log_negativity_diff <= opts.tol.measure_agreement &&
                   c.discord_diff <= opts.tol.measure_agreement;
      } catch (const Error& e) {
        c.passed = false;
        c.message = e.what();
      }
      result.spot_checks.push_back(c);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepGrid& grid, const SweepResult& result,
                     const std::vector<std::string>& notes) {
  write_header(os, grid, notes);
  os << "axis1,axis2,E_N,discord2,nu_tilde_minus,nu_minus,nu_plus,mu,mu1,mu2,"
        "eta_plus_var,eta_minus_var,pi_plus_var,pi_minus_var,method,status\n";
  for (const auto& r : result.records) {
    const auto& q = r.report;
    os << number(r.axis1) << ',' << (r.axis2 ? number(*r.axis2) : std::string{}) << ','
       << number(q.log_negativity) << ',' << number(q.discord_mode2) << ',' << number(q.nu_tilde_minus) << ','
       << number(q.nu_minus) << ',' << number(q.nu_plus) << ',' << number(q.purity_global) << ','
       << number(q.purity_mode1) << ',' << number(q.purity_mode2) << ',' << number(q.eta_plus_var) << ','
       << number(q.eta_minus_var) << ',' << number(q.pi_plus_var) << ',' << number(q.pi_minus_var) << ','
       << to_string(r.method) << ',' << to_string(r.status) << '\n';
  }
  for (const auto& r : result.records) {
    if (r.status == PointStatus::Ok) continue;
    os << fmt::format("# point {} axis1={} axis2={} {}: {}\n", r.index, number(r.axis1),
                      r.axis2 ? number(*r.axis2) : std::string{"none"}, to_string(r.status), r.message);
  }
}

void write_sweep_json(std::ostream& os, const SweepGrid& grid, const SweepResult& result,
                      const std::vector<std::string>& notes) {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
  auto axis = [](const GridAxis& a) {
    return ordered_json{{"name", to_string(a.axis)}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}};
  };
  const ModelParams& p = grid.base;
  ordered_json doc;
  doc["fixed"] = {{"omega1", p.omega1}, {"omega2", p.omega2},   {"k", p.k},
                  {"gamma", p.gamma},   {"omega_c", p.omega_c}, {"temperature", p.temperature}};
  doc["axis1"] = axis(grid.axis1);
  doc["axis2"] = grid.axis2 ? axis(*grid.axis2) : ordered_json(nullptr);
  doc["method"] = to_string(grid.method);
  doc["notes"] = notes;
  ordered_json rows = ordered_json::array();
  for (const auto& r : result.records) {
    const auto& q = r.report;
    ordered_json row;
    row["axis1"] = r.axis1;
    row["axis2"] = r.axis2 ? ordered_json(*r.axis2) : ordered_json(nullptr);
    row["E_N"] = num(q.log_negativity);
    row["discord2"] = num(q.discord_mode2);
    row["nu_tilde_minus"] = num(q.nu_tilde_minus);
    row["nu_minus"] = num(q.nu_minus);
    row["nu_plus"] = num(q.nu_plus);
    row["mu"] = num(q.purity_global);
    row["mu1"] = num(q.purity_mode1);
    row["mu2"] = num(q.purity_mode2);
    row["eta_plus_var"] = num(q.eta_plus_var);
    row["eta_minus_var"] = num(q.eta_minus_var);
    row["pi_plus_var"] = num(q.pi_plus_var);
    row["pi_minus_var"] = num(q.pi_minus_var);
    row["method"] = to_string(r.method);
    row["status"] = to_string(r.status);
    if (!r.message.empty()) row["message"] = r.message;
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  os << doc.dump(1) << '\n';
}

}  // namespace qcorr::cli
