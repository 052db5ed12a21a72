#include <cstdlib>

#include "doctest.h"
#include "qcorr/errors.hpp"
#include "qcorr/tolerances.hpp"

using namespace qcorr;

TEST_CASE("overrides") {
  Tolerances t;
  t.apply_overrides("cross_method_rel=1e-30, quad_abs = 2e-15,");
  CHECK(t.cross_method_rel == 1e-30);
  CHECK(t.quad_abs == 2e-15);
  CHECK(t.quad_rel == Tolerances{}.quad_rel);

  t.apply_overrides("");
  CHECK(t.cross_method_rel == 1e-30);

  for (const char* bad : {"bogus=1", "quad_rel", "quad_rel=abc", "quad_rel=1e-3x", "quad_rel="}) {
    CAPTURE(bad);
    try {
      Tolerances u;
      u.apply_overrides(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
  }
}

TEST_CASE("environment") {
  unsetenv("QCORR_TOL_OVERRIDES");
  CHECK(Tolerances::from_environment().symplectic == 1e-9);
  setenv("QCORR_TOL_OVERRIDES", "symplectic=1e-6", 1);
  CHECK(Tolerances::from_environment().symplectic == 1e-6);
  setenv("QCORR_TOL_OVERRIDES", "symplectic=oops", 1);
  CHECK_THROWS_AS(Tolerances::from_environment(), Error);
  unsetenv("QCORR_TOL_OVERRIDES");
}

TEST_CASE("error kinds") {
  const Error e(ErrorKind::DegeneratePoles, "poles merge");
  CHECK(e.kind() == ErrorKind::DegeneratePoles);
  CHECK(std::string(e.what()).find("poles merge") != std::string::npos);
  CHECK(to_string(ErrorKind::ResonantParams) == "ResonantParams");
  CHECK(to_string(ErrorKind::UnphysicalState) == "UnphysicalState");
  for (ErrorKind k : {ErrorKind::ResonantParams, ErrorKind::NonPositiveFrequency, ErrorKind::NegativeRate,
                      ErrorKind::NegativeCoupling, ErrorKind::InvalidArgument}) {
    CHECK(is_input_error(k));
  }
  for (ErrorKind k : {ErrorKind::KernelPole, ErrorKind::RootFindingFailure, ErrorKind::NearRealAxisRoot,
                      ErrorKind::DegeneratePoles, ErrorKind::QuadratureNonConvergence, ErrorKind::UnphysicalState}) {
    CHECK_FALSE(is_input_error(k));
  }
}
