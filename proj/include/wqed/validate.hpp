#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wqed/scatter.hpp"

namespace wqed {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;

  bool passed() const { return failures == 0; }
};

using SolverFn = std::function<TransportSolution(const ScatterProblem&)>;

// Lossless instances (gamma = 0, random sizes up to 20, random spacings,
// detunings and couplings, both chirality modes) must conserve probability:
// the four port probabilities sum to 1 within tolerance. Lossy companions
// must land in [0, 1].
SuiteResult flux_conservation_suite(std::uint64_t seed, int n_cases, double tolerance = 1e-12);

// Two-emitter chiral equal-coupling transport against the analytic reference
// amplitudes, on a detuning grid per random parameter tuple. `solver`
// defaults to solve_transport; tests inject perturbed solvers here to prove
// the comparison actually bites.
SuiteResult closedform_oracle_suite(std::uint64_t seed, int n_tuples, int n_deltas,
                                    double tolerance = 1e-10, SolverFn solver = {});

// Structural identities of the solution: the boundary identity
// t_top[j] = t_bottom[j] - 1 for equal-coupling chiral chains, zero
// reflection in chiral mode, and invariance of all port probabilities under
// a rigid translation of the chain.
SuiteResult identity_suite(std::uint64_t seed, int n_cases, double tolerance = 1e-12);

// Byte-level determinism: a small disordered ensemble run twice with
// different thread counts must produce identical statistics.
SuiteResult determinism_suite(std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace wqed
