#include <doctest.h>

#include <cmath>

#include "wqed/ddi.hpp"
#include "wqed/observables.hpp"

using namespace wqed;

namespace {

ScatterProblem periodic_problem(int n) {
  ScatterProblem problem;
  problem.chain = build_periodic_chain(n, 32.75, EmitterParams{});
  problem.ddi = ddi_matrix(problem.chain, problem.units);
  return problem;
}

}  // namespace

TEST_CASE("routing efficiency basics") {
  CHECK(routing_efficiency(0.8, 0.2) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(routing_efficiency(0.3, 0.0) == 1.0);
  CHECK(routing_efficiency(0.0, 0.3) == -1.0);
  CHECK_THROWS_AS(routing_efficiency(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(routing_efficiency(-0.1, 0.5), std::domain_error);
}

TEST_CASE("detuning grid construction") {
  const auto grid = delta_grid(-300.0, 300.0, 0.1);
  CHECK(grid.size() == 6001);
  CHECK(grid.front() == -300.0);
  CHECK(grid.back() == doctest::Approx(300.0).epsilon(1e-12));

  const auto odd = delta_grid(0.0, 1.0, 0.3);
  REQUIRE(odd.size() == 5);
  CHECK(odd[3] == doctest::Approx(0.9));
  CHECK(odd[4] == 1.0);

  CHECK_THROWS_AS(delta_grid(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("spectrum of a decoupled chain") {
  ScatterProblem problem = periodic_problem(3);
  problem.chain.emitter.big_gamma_bottom = 0.0;
  problem.chain.emitter.big_gamma_top = 0.0;
  problem.chain.emitter.gamma = 0.0;

  const auto grid = delta_grid(-5.0, 5.0, 0.5);
  const Spectrum spec = spectrum(problem, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(spec.p_bottom[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spec.p_top[i] == 0.0);
    CHECK(spec.xi[i] == doctest::Approx(-1.0).epsilon(1e-14));
  }
}

TEST_CASE("single-emitter spectrum peaks at resonance") {
  const ScatterProblem problem = periodic_problem(1);
  const auto grid = delta_grid(-30.0, 30.0, 0.5);
  const Spectrum spec = spectrum(problem, grid);

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (spec.p_top[i] > spec.p_top[best]) best = i;
  CHECK(grid[best] == doctest::Approx(0.0).epsilon(1e-12));
  const double expected = std::pow(11.03 / (6.86 / 2.0 + 11.03), 2.0);
  CHECK(spec.p_top[best] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("peak scan with refinement") {
  const ScatterProblem single = periodic_problem(1);
  const PmaxResult res = pmax_scan(single, -300.0, 300.0);
  CHECK(res.n == 1);
  CHECK(res.p_max == doctest::Approx(0.58185).epsilon(5e-4));
  CHECK(std::abs(res.delta_max) < 0.5);
  CHECK_FALSE(res.at_boundary);

  // Deliberately coarse scan: refinement must still land on the true peak,
  // and never below the best coarse sample.
  const ScatterProblem pair = periodic_problem(2);
  const PmaxResult coarse = pmax_scan(pair, -300.0, 300.0, 7.0, 1e-3);
  const PmaxResult fine = pmax_scan(pair, -300.0, 300.0, 0.1, 1e-3);
  CHECK(coarse.p_max >= fine.p_max - 5e-4);
  CHECK(std::abs(coarse.delta_max - fine.delta_max) < 1.0);

  ScatterProblem probe = pair;
  probe.delta = coarse.delta_max;
  CHECK(coarse.p_max >= solve_transport(probe).transmission_top() - 1e-12);
}

TEST_CASE("peak pinned to the scan edge is flagged") {
  const ScatterProblem pair = periodic_problem(2);
  const PmaxResult res = pmax_scan(pair, -300.0, -100.0, 0.5, 1e-3);
  CHECK(res.at_boundary);
  CHECK(res.delta_max == doctest::Approx(-100.0).epsilon(1e-6));
}

TEST_CASE("localization length estimators") {
  CHECK(localization_length(10, 0.5) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(std::isinf(localization_length(4, 0.0)));
  CHECK_THROWS_AS(localization_length(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(localization_length(4, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(localization_length(4, -0.1), std::invalid_argument);

  CHECK(conventional_localization_length(10, std::log(0.5)) ==
        doctest::Approx(-20.0 / std::log(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(conventional_localization_length(10, 0.0), std::invalid_argument);
}
