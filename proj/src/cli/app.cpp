#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "qcorr/cli.hpp"
#include "qcorr/errors.hpp"

namespace qcorr::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Settings {
  ModelParams params;
  std::string method = "analytic";
  std::string out;
  std::string format = "csv";
  int workers = 0;
  std::vector<std::string> grids;
  double bisect_tol = 1e-4;
  std::uint64_t seed = 12345;
  int n_cases = 20;
};

void report_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << nlohmann::ordered_json{{"error", kind}, {"message", message}}.dump() << '\n';
}

nlohmann::ordered_json report_json(const CorrelationReport& r) {
  return {{"E_N", r.log_negativity},
          {"discord2", r.discord_mode2},
          {"nu_tilde_minus", r.nu_tilde_minus},
          {"nu_minus", r.nu_minus},
          {"nu_plus", r.nu_plus},
          {"mu", r.purity_global},
          {"mu1", r.purity_mode1},
          {"mu2", r.purity_mode2},
          {"eta_plus_var", r.eta_plus_var},
          {"eta_minus_var", r.eta_minus_var},
          {"pi_plus_var", r.pi_plus_var},
          {"pi_minus_var", r.pi_minus_var},
          {"epr_proxy", r.epr_proxy}};
}

// Writes to --out when given, otherwise to out.
template <class F>
void emit(const Settings& s, std::ostream& out, F&& write) {
  if (s.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(s.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidArgument, fmt::format("cannot open '{}' for writing", s.out));
  write(file);
}

int cmd_point(const Settings& s, const Tolerances& tol, std::ostream& out) {
  const MethodChoice choice = parse_method(s.method);
  validate_params(s.params, tol);
  std::vector<std::pair<Method, CorrelationReport>> reports;
  if (choice != MethodChoice::Quadrature) reports.emplace_back(Method::Analytic, evaluate_point(s.params, Method::Analytic, tol));
  if (choice != MethodChoice::Analytic) {
    reports.emplace_back(Method::Quadrature, evaluate_point(s.params, Method::Quadrature, tol));
  }

  for (const auto& [method, r] : reports) {
    const auto j = report_json(r);
    out << "method " << to_string(method) << '\n';
    for (const auto& [key, value] : j.items()) out << key << ' ' << fmt::format("{}", value.get<double>()) << '\n';
  }
  if (reports.size() == 2) {
    out << fmt::format("diff_E_N {:.3g}\n", std::abs(reports[0].second.log_negativity - reports[1].second.log_negativity));
    out << fmt::format("diff_discord2 {:.3g}\n",
                       std::abs(reports[0].second.discord_mode2 - reports[1].second.discord_mode2));
  }

  if (!s.out.empty()) {
    SweepGrid grid;
    grid.base = s.params;
    grid.axis1 = GridAxis{Axis::Omega2, s.params.omega2, s.params.omega2, 1};
    grid.method = choice;
    SweepResult result;
    for (const auto& [method, r] : reports) {
      SweepRecord rec;
      rec.axis1 = s.params.omega2;
      rec.method = method;
      rec.report = r;
      result.records.push_back(rec);
    }
    emit(s, out, [&](std::ostream& os) {
      if (s.format == "json") {
        write_sweep_json(os, grid, result);
      } else {
        write_sweep_csv(os, grid, result);
      }
    });
  }
  return kExitOk;
}

int cmd_sweep(const Settings& s, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  if (s.grids.size() > 2) throw Error(ErrorKind::InvalidArgument, "at most two --grid axes");
  SweepGrid grid;
  std::vector<std::string> notes;
  if (s.grids.empty()) {
    grid = figure_grid(s.params);
    notes.push_back("default figure grid; k in [0, 200] and omega2 in (0, 10] are assumed ranges");
  } else {
    grid.base = s.params;
    grid.axis1 = parse_grid_axis(s.grids[0]);
    if (s.grids.size() == 2) {
      grid.axis2 = parse_grid_axis(s.grids[1]);
      if (grid.axis2->axis == grid.axis1.axis) throw Error(ErrorKind::InvalidArgument, "grid axes must differ");
    }
  }
  grid.method = parse_method(s.method);
  {
    // Fixed fields must be valid on their own; omega2 may be swept into resonance.
    ModelParams probe = grid.params_at(0);
    if (probe.omega2 == probe.omega1) probe.omega2 = 2.0 * probe.omega1;
    validate_params(probe, tol);
  }

  SweepOptions opts;
  opts.workers = s.workers > 0 ? s.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  opts.seed = s.seed;
  opts.tol = tol;
  opts.progress = &err;
  const SweepResult result = run_sweep(grid, opts);

  emit(s, out, [&](std::ostream& os) {
    if (s.format == "json") {
      write_sweep_json(os, grid, result, notes);
    } else {
      write_sweep_csv(os, grid, result, notes);
    }
  });

  bool spot_ok = true;
  for (const auto& c : result.spot_checks) {
    spot_ok = spot_ok && c.passed;
    if (!c.passed) {
      err << fmt::format("spot check point {}: FAIL entry ratio {:.3g} dE_N {:.3g} ddiscord {:.3g} {}\n", c.index,
                         c.entry_error_ratio, c.log_negativity_diff, c.discord_diff, c.message);
    }
  }
  if (!result.spot_checks.empty()) {
    err << fmt::format("spot checks: {} quadrature comparisons, {}\n", result.spot_checks.size(),
                       spot_ok ? "all agree" : "DISAGREEMENT");
  }
  err << fmt::format("sweep: {} points, {} skipped (resonant), {} failed\n", grid.point_count(),
                     result.skipped_points, result.failed_points);
  if (result.too_many_failures(grid.point_count())) {
    report_error(err, "SweepFailures", fmt::format("{} of {} points failed", result.failed_points, grid.point_count()));
    return kExitNumerical;
  }
  return spot_ok ? kExitOk : kExitValidation;
}

int cmd_band(const Settings& s, const Tolerances& tol, std::ostream& out) {
  BandOptions opts;
  opts.bisect_tol = s.bisect_tol;
  const MethodChoice choice = parse_method(s.method);
  opts.method = choice == MethodChoice::Quadrature ? Method::Quadrature : Method::Analytic;
  if (s.grids.size() > 1) throw Error(ErrorKind::InvalidArgument, "band takes at most one --grid (omega2:lo:hi:n)");
  if (s.grids.size() == 1) {
    const GridAxis g = parse_grid_axis(s.grids[0]);
    if (g.axis != Axis::Omega2) throw Error(ErrorKind::InvalidArgument, "band scans omega2 only");
    opts.scan_lo = g.lo;
    opts.scan_hi = g.hi;
    opts.scan_points = g.n;
  }
  const BandResult band = find_bands(s.params, opts, tol);

  emit(s, out, [&](std::ostream& os) {
    if (s.format == "json") {
      nlohmann::ordered_json doc;
      doc["scan"] = {{"lo", band.scan_lo}, {"hi", band.scan_hi}, {"points", opts.scan_points}};
      doc["bisect_tol"] = opts.bisect_tol;
      doc["empty"] = band.empty();
      nlohmann::ordered_json list = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < band.bands.size(); ++i) {
        const Band& b = band.bands[i];
        list.push_back({{"omega_prime", b.omega_prime},
                        {"omega_double_prime", b.omega_double_prime},
                        {"max_E_N", b.max_log_negativity},
                        {"tolerance_achieved", b.tolerance_achieved},
                        {"lower_open", b.lower_open},
                        {"upper_open", b.upper_open},
                        {"primary", band.primary == i}});
      }
      doc["bands"] = std::move(list);
      os << doc.dump(1) << '\n';
      return;
    }
    os << fmt::format("scan omega2 in [{}, {}], {} log-spaced points, bisection tol {}\n", band.scan_lo,
                      band.scan_hi, opts.scan_points, opts.bisect_tol);
    if (band.empty()) {
      os << "band EMPTY\n";
      return;
    }
    for (std::size_t i = 0; i < band.bands.size(); ++i) {
      const Band& b = band.bands[i];
      os << fmt::format("band omega_prime={} omega_double_prime={} max_E_N={} tolerance={}{}{}{}\n", b.omega_prime,
                        b.omega_double_prime, b.max_log_negativity, b.tolerance_achieved,
                        b.lower_open ? " lower_open" : "", b.upper_open ? " upper_open" : "",
                        band.primary == i ? " primary" : "");
    }
  });
  return kExitOk;
}

int cmd_validate(const Settings& s, const Tolerances& tol, std::ostream& out) {
  const ValidationReport report = run_validation(s.seed, s.n_cases, tol);
  emit(s, out, [&](std::ostream& os) {
    for (const auto& c : report.checks) {
      os << fmt::format("{} {} {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
    }
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                      [](const ValidationCheck& c) { return !c.passed; });
    os << fmt::format("validate: {} checks, {} failed\n", report.checks.size(), failed);
  });
  return report.passed() ? kExitOk : kExitValidation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Stationary quantum correlations of two detuned oscillators in a common Ohmic bath", "qcorr"};
  app.set_config("--config", "", "flat key = value file mirroring the flags; flags win");
  app.add_option("--omega1", s.params.omega1, "frequency of oscillator 1")->capture_default_str();
  app.add_option("--omega2", s.params.omega2, "frequency of oscillator 2")->capture_default_str();
  app.add_option("--k", s.params.k, "direct coupling k/2 (x1 - x2)^2")->capture_default_str();
  app.add_option("--gamma", s.params.gamma, "dissipation rate")->capture_default_str();
  app.add_option("--omega-c", s.params.omega_c, "bath cutoff frequency")->capture_default_str();
  app.add_option("--temp", s.params.temperature, "bath temperature")->capture_default_str();
  app.add_option("--method", s.method, "analytic | quadrature | both")->capture_default_str();
  app.add_option("--out", s.out, "output file (default: standard output)");
  app.add_option("--format", s.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--workers", s.workers, "sweep worker threads (default: hardware threads)");
  app.add_option("--grid", s.grids, "axis:lo:hi:n with axis in k, omega2, temperature, gamma (up to twice)");
  app.add_option("--bisect-tol", s.bisect_tol, "band edge tolerance")->capture_default_str();
  app.add_option("--seed", s.seed, "seed for spot checks and validation cases")->capture_default_str();
  app.add_option("--n-cases", s.n_cases, "random cases per validation check")->capture_default_str();
  app.footer("Exit codes: 0 ok or empty band, 1 validation failure, 2 bad input, 3 numerical failure.\n"
             "QCORR_TOL_OVERRIDES=name=value,... overrides numerical tolerances (test hook only).");

  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  auto* sweep = app.add_subcommand("sweep", "1-D or 2-D parameter sweep to CSV or JSON");
  auto* band = app.add_subcommand("band", "find the omega2 band with non-zero entanglement");
  auto* validate = app.add_subcommand("validate", "run the cross-method and oracle checks");
  for (auto* sub : {point, sweep, band, validate}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "InvalidArgument", e.what());
    return kExitInput;
  }

  try {
    const Tolerances tol = Tolerances::from_environment();
    if (point->parsed()) return cmd_point(s, tol, out);
    if (sweep->parsed()) return cmd_sweep(s, tol, out, err);
    if (band->parsed()) return cmd_band(s, tol, out);
    return cmd_validate(s, tol, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return is_input_error(e.kind()) ? kExitInput : kExitNumerical;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return kExitNumerical;
  }
}

}  // namespace qcorr::cli
