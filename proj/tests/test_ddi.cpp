#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wqed/ddi.hpp"

using namespace wqed;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("coupling at reference separations") {
  // Values frozen from direct evaluation of the formula; they anchor the
  // default-geometry physics (spacing lambda_e / 20 means R = pi / 10).
  CHECK(ddi_coupling(2.0 * kPi / 20.0, kPi / 2.0) ==
        doctest::Approx(23.082541374162).epsilon(1e-12));
  CHECK(ddi_coupling(0.1, kPi / 2.0) == doctest::Approx(746.2780989674461).epsilon(1e-12));
  CHECK(ddi_coupling(2.0 * 2.0 * kPi / 20.0, kPi / 2.0) ==
        doctest::Approx(2.5970938737257065).epsilon(1e-12));
  // Far separation: the coupling has decayed below half a linewidth.
  const double r_120nm = 2.0 * kPi * 120.0 / 655.0;
  CHECK(std::abs(ddi_coupling(r_120nm, kPi / 2.0)) < 0.5);
}

TEST_CASE("near-field divergence") {
  // Perpendicular dipoles approach (3/4) / R^3 as R -> 0.
  for (const double r : {1e-4, 1e-3, 1e-2, 0.049}) {
    const double lead = 0.75 / (r * r * r);
    CHECK(ddi_coupling(r, kPi / 2.0) == doctest::Approx(lead).epsilon(0.02));
  }
  CHECK(ddi_coupling(1e-4, kPi / 2.0) > 7e11 * 0.9);
}

TEST_CASE("angle dependence and continuity") {
  // The axial term flips the sign of the near field along the chain axis.
  const double r = 0.3;
  const double perp = ddi_coupling(r, kPi / 2.0);
  const double axial = ddi_coupling(r, 0.0);
  CHECK(perp > 0.0);
  CHECK(axial < 0.0);
  CHECK(ddi_coupling(r, kPi) == doctest::Approx(axial).epsilon(1e-13));

  for (double base = 0.05; base < 40.0; base *= 1.7) {
    const double here = ddi_coupling(base, kPi / 2.0);
    const double near = ddi_coupling(base * (1.0 + 1e-9), kPi / 2.0);
    CHECK(std::abs(near - here) <= 1e-5 * (std::abs(here) + 1.0));
  }
}

TEST_CASE("oscillatory far field") {
  // Beyond a few wavelengths the cos(R)/R term dominates and changes sign
  // roughly every pi.
  const double a = ddi_coupling(10.0 * kPi, kPi / 2.0);
  const double b = ddi_coupling(11.0 * kPi, kPi / 2.0);
  CHECK(a * b < 0.0);
  CHECK(std::abs(a) < 0.1);
}

TEST_CASE("invalid separations") {
  CHECK_THROWS_AS(ddi_coupling(0.0, kPi / 2.0), std::domain_error);
  CHECK_THROWS_AS(ddi_coupling(-1.0, kPi / 2.0), std::domain_error);
}

TEST_CASE("pairwise matrix for a periodic chain") {
  const EmitterChain chain = build_periodic_chain(3, 32.75, EmitterParams{});
  const UnitSystem units;
  const Eigen::MatrixXd j = ddi_matrix(chain, units);

  REQUIRE(j.rows() == 3);
  for (int a = 0; a < 3; ++a) CHECK(j(a, a) == 0.0);
  CHECK(j(0, 1) == doctest::Approx(23.082541374162).epsilon(1e-12));
  CHECK(j(1, 2) == j(0, 1));
  CHECK(j(0, 2) == doctest::Approx(2.5970938737257065).epsilon(1e-12));
  CHECK(j.isApprox(j.transpose()));
}
