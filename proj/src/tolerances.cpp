#include "qcorr/tolerances.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

std::map<std::string, double Tolerances::*> field_table() {
  return {
      {"resonance", &Tolerances::resonance},
      {"root_residual", &Tolerances::root_residual},
      {"real_axis", &Tolerances::real_axis},
      {"kernel_pole", &Tolerances::kernel_pole},
      {"singular_det", &Tolerances::singular_det},
      {"pole_merge", &Tolerances::pole_merge},
      {"partial_fraction", &Tolerances::partial_fraction},
      {"quad_rel", &Tolerances::quad_rel},
      {"quad_abs", &Tolerances::quad_abs},
      {"covariance", &Tolerances::covariance},
      {"symplectic", &Tolerances::symplectic},
      {"cross_method_rel", &Tolerances::cross_method_rel},
      {"cross_method_abs", &Tolerances::cross_method_abs},
      {"measure_agreement", &Tolerances::measure_agreement},
      {"discord_oracle_abs", &Tolerances::discord_oracle_abs},
      {"equipartition", &Tolerances::equipartition},
      {"weak_ratio_lo", &Tolerances::weak_ratio_lo},
      {"weak_ratio_hi", &Tolerances::weak_ratio_hi},
  };
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

void Tolerances::apply_overrides(const std::string& spec) {
  const auto table = field_table();
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, "tolerance override '" + item + "' is not name=value");
    }
    const std::string name = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    const auto it = table.find(name);
    if (it == table.end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown tolerance '" + name + "'");
    }
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw Error(ErrorKind::InvalidArgument, "bad value for tolerance '" + name + "'");
    }
    this->*(it->second) = parsed;
  }
}

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  if (const char* env = std::getenv("QCORR_TOL_OVERRIDES")) tol.apply_overrides(env);
  return tol;
}

}  // namespace qcorr
