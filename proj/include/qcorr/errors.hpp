#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorKind {
  // Input errors: the parameters are outside the supported contract.
  ResonantParams,
  NonPositiveFrequency,
  NegativeRate,
  NegativeCoupling,
  InvalidArgument,
  // Numerical errors.
  KernelPole,
  SingularAtFrequency,
  RootFindingFailure,
  NearRealAxisRoot,
  DigammaPole,
  CothPole,
  DegeneratePoles,
  QuadratureNonConvergence,
  UnphysicalState,
  UnstablePotential,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for errors caused by bad user input rather than by a numerical failure.
bool is_input_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcorr
