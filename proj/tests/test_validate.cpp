#include <doctest.h>

#include "wqed/validate.hpp"

using namespace wqed;

TEST_CASE("flux conservation suite on random instances") {
  const SuiteResult res = flux_conservation_suite(991, 150);
  CHECK(res.cases == 300);  // lossless plus lossy companion per case
  CHECK(res.failures == 0);
  CHECK(res.max_error < 1e-12);
}

TEST_CASE("closed-form oracle suite") {
  const SuiteResult res = closedform_oracle_suite(992, 6, 301);
  CHECK(res.cases == 6 * 301);
  CHECK(res.failures == 0);
  CHECK(res.max_error < 1e-10);
}

TEST_CASE("oracle suite catches a solver with the wrong pole width") {
  // Same transport code, but fed twice the free-space rate: equivalent to
  // using a full-width instead of half-width complex resonance. The
  // comparison must light up, otherwise it proves nothing.
  SolverFn wrong_width = [](const ScatterProblem& problem) {
    ScatterProblem mutated = problem;
    mutated.chain.emitter.gamma *= 2.0;
    return solve_transport(mutated);
  };
  const SuiteResult res = closedform_oracle_suite(993, 6, 301, 1e-10, wrong_width);
  CHECK(res.failures > 0);
  CHECK(res.max_error > 1e-3);
}

TEST_CASE("identity suite") {
  const SuiteResult res = identity_suite(994, 80);
  CHECK(res.cases == 80);
  CHECK(res.failures == 0);
  CHECK(res.max_error < 1e-12);
}

TEST_CASE("determinism suite") {
  const SuiteResult res = determinism_suite(995);
  CHECK(res.cases == 2);
  CHECK(res.failures == 0);
}

TEST_CASE("full suite roll-up") {
  const auto suites = run_all_suites(1234);
  REQUIRE(suites.size() == 4);
  for (const auto& suite : suites) {
    INFO(suite.name);
    CHECK(suite.passed());
  }
}
