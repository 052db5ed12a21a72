#include "qcorr/errors.hpp"

namespace qcorr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ResonantParams: return "ResonantParams";
    case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorKind::NegativeRate: return "NegativeRate";
    case ErrorKind::NegativeCoupling: return "NegativeCoupling";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::KernelPole: return "KernelPole";
    case ErrorKind::SingularAtFrequency: return "SingularAtFrequency";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::NearRealAxisRoot: return "NearRealAxisRoot";
    case ErrorKind::DigammaPole: return "DigammaPole";
    case ErrorKind::CothPole: return "CothPole";
    case ErrorKind::DegeneratePoles: return "DegeneratePoles";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::UnphysicalState: return "UnphysicalState";
    case ErrorKind::UnstablePotential: return "UnstablePotential";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ResonantParams:
    case ErrorKind::NonPositiveFrequency:
    case ErrorKind::NegativeRate:
    case ErrorKind::NegativeCoupling:
    case ErrorKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace qcorr
