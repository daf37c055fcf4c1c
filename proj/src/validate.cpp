#include "wqed/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "wqed/closedform.hpp"
#include "wqed/ddi.hpp"
#include "wqed/disorder.hpp"
#include "wqed/ensemble.hpp"
#include "wqed/observables.hpp"

namespace wqed {

namespace {

struct CaseRng {
  std::mt19937_64 engine;

  explicit CaseRng(std::uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

EmitterChain random_chain(CaseRng& rng, int n, double gamma, double gamma_bottom,
                          double gamma_top) {
  EmitterChain chain;
  chain.emitter.gamma = gamma;
  chain.emitter.big_gamma_bottom = gamma_bottom;
  chain.emitter.big_gamma_top = gamma_top;
  chain.emitter.theta_dipole = rng.uniform(0.0, std::numbers::pi);
  chain.positions_nm.resize(static_cast<std::size_t>(n));
  chain.positions_nm[0] = 0.0;
  for (int j = 1; j < n; ++j)
    chain.positions_nm[static_cast<std::size_t>(j)] =
        chain.positions_nm[static_cast<std::size_t>(j - 1)] + rng.uniform(5.0, 200.0);
  return chain;
}

ScatterProblem random_problem(CaseRng& rng, double gamma) {
  const int n = rng.uniform_int(1, 20);
  const double gb = rng.uniform(0.1, 30.0);
  const double gt = rng.uniform(0.1, 30.0);
  ScatterProblem problem;
  problem.chain = random_chain(rng, n, gamma, gb, gt);
  problem.units = UnitSystem{};
  problem.ddi = ddi_matrix(problem.chain, problem.units);
  problem.delta = rng.uniform(-300.0, 300.0);
  problem.mode = rng.uniform_int(0, 1) == 0 ? ChiralityMode::chiral : ChiralityMode::bidirectional;
  return problem;
}

}  // namespace

SuiteResult flux_conservation_suite(std::uint64_t seed, int n_cases, double tolerance) {
  CaseRng rng(seed);
  SuiteResult result{.name = "flux-conservation", .tolerance = tolerance};

  for (int c = 0; c < n_cases; ++c) {
    // Lossless instance: everything emitted must reach one of the four ports.
    ScatterProblem lossless = random_problem(rng, 0.0);
    const TransportSolution sol = solve_transport(lossless);
    const double err = std::abs(sol.outgoing_total() - 1.0);
    result.max_error = std::max(result.max_error, err);
    ++result.cases;
    if (!(err <= tolerance)) ++result.failures;

    // Lossy companion: the loss channel takes a fraction in [0, 1].
    ScatterProblem lossy = random_problem(rng, rng.uniform(0.01, 20.0));
    const TransportSolution lossy_sol = solve_transport(lossy);
    const double loss = lossy_sol.loss();
    ++result.cases;
    if (!(loss >= -tolerance && loss <= 1.0 + tolerance)) ++result.failures;
  }
  return result;
}

SuiteResult closedform_oracle_suite(std::uint64_t seed, int n_tuples, int n_deltas,
                                    double tolerance, SolverFn solver) {
  if (!solver) solver = [](const ScatterProblem& p) { return solve_transport(p); };

  CaseRng rng(seed);
  SuiteResult result{.name = "two-emitter-closed-form", .tolerance = tolerance};

  for (int t = 0; t < n_tuples; ++t) {
    TwoEmitterParams ref;
    ref.gamma = rng.uniform(0.05, 20.0);
    ref.big_gamma = rng.uniform(0.1, 30.0);
    ref.ddi = rng.uniform(-50.0, 50.0);
    const double r12 = rng.uniform(0.0, 0.05);  // phase per unit detuning

    ScatterProblem problem;
    problem.chain.emitter.gamma = ref.gamma;
    problem.chain.emitter.big_gamma_bottom = ref.big_gamma;
    problem.chain.emitter.big_gamma_top = ref.big_gamma;
    problem.chain.positions_nm = {0.0, 1.0};
    problem.ddi = Eigen::MatrixXd::Zero(2, 2);
    problem.ddi(0, 1) = problem.ddi(1, 0) = ref.ddi;
    problem.mode = ChiralityMode::chiral;
    problem.units = UnitSystem{};
    // Scale the 1 nm spacing so the accumulated phase equals r12 * delta.
    problem.units.phase_scale =
        r12 * problem.units.group_velocity / (problem.units.gamma0_rad_per_s() * 1e-9);

    for (int i = 0; i < n_deltas; ++i) {
      const double delta = -300.0 + 600.0 * i / (n_deltas - 1);
      problem.delta = delta;
      ref.phase = problem.units.phase(delta, 1.0);  // identical arithmetic to the solver

      const TransportSolution sol = solver(problem);
      const std::complex<double> tb_ref = t_bottom_two(ref, delta);
      const std::complex<double> tt_ref = t_top_two(ref, delta);
      const double err_b =
          std::abs(sol.t_bottom.back() - tb_ref) / std::max(std::abs(tb_ref), 1e-6);
      const double err_t = std::abs(sol.t_top.back() - tt_ref) / std::max(std::abs(tt_ref), 1e-6);
      const double err = std::max(err_b, err_t);
      result.max_error = std::max(result.max_error, err);
      ++result.cases;
      if (!(err <= tolerance)) ++result.failures;
    }
  }
  return result;
}

SuiteResult identity_suite(std::uint64_t seed, int n_cases, double tolerance) {
  CaseRng rng(seed);
  SuiteResult result{.name = "solution-identities", .tolerance = tolerance};

  for (int c = 0; c < n_cases; ++c) {
    const int n = rng.uniform_int(1, 20);
    const double gamma = rng.uniform(0.0, 20.0);
    const double gg = rng.uniform(0.1, 30.0);  // equal coupling to both guides

    ScatterProblem problem;
    problem.chain = random_chain(rng, n, gamma, gg, gg);
    problem.units = UnitSystem{};
    problem.ddi = ddi_matrix(problem.chain, problem.units);
    problem.delta = rng.uniform(-300.0, 300.0);
    problem.mode = ChiralityMode::chiral;

    const TransportSolution sol = solve_transport(problem);

    // Equal chiral couplings feed both guides the same drops, so the top
    // coefficients track the bottom ones with a single offset.
    double err = 0.0;
    for (int j = 0; j <= n; ++j) {
      const auto idx = static_cast<std::size_t>(j);
      err = std::max(err, std::abs(sol.t_top[idx] - (sol.t_bottom[idx] - 1.0)));
      err = std::max(err, std::abs(sol.r_bottom[idx]));
      err = std::max(err, std::abs(sol.r_top[idx]));
    }

    // Rigid translation must leave every port probability unchanged.
    ScatterProblem shifted = problem;
    const double offset = rng.uniform(10.0, 5000.0);
    for (auto& x : shifted.chain.positions_nm) x += offset;
    const TransportSolution shifted_sol = solve_transport(shifted);
    err = std::max(err, std::abs(shifted_sol.transmission_bottom() - sol.transmission_bottom()));
    err = std::max(err, std::abs(shifted_sol.transmission_top() - sol.transmission_top()));
    err = std::max(err, std::abs(shifted_sol.reflection_bottom() - sol.reflection_bottom()));
    err = std::max(err, std::abs(shifted_sol.reflection_top() - sol.reflection_top()));

    result.max_error = std::max(result.max_error, err);
    ++result.cases;
    if (!(err <= tolerance)) ++result.failures;
  }
  return result;
}

SuiteResult determinism_suite(std::uint64_t seed) {
  SuiteResult result{.name = "ensemble-determinism", .tolerance = 0.0};

  DisorderSpec spec;
  spec.master_seed = seed;
  spec.sigma_fraction = 0.1;
  const EmitterParams emitter{};
  const UnitSystem units{};
  const std::vector<double> grid = delta_grid(-50.0, 50.0, 2.5);

  auto run = [&](int threads) {
    EnsembleConfig config;
    config.n_realizations = 48;
    config.threads = threads;
    return run_ensemble(spec, 3, emitter, ChiralityMode::chiral, units, grid, config);
  };

  const EnsembleStats base = run(1);
  for (const int threads : {2, 4}) {
    const EnsembleStats other = run(threads);
    ++result.cases;
    const bool identical =
        std::memcmp(base.p_bottom.mean.data(), other.p_bottom.mean.data(),
                    base.p_bottom.mean.size() * sizeof(double)) == 0 &&
        std::memcmp(base.p_top.mean.data(), other.p_top.mean.data(),
                    base.p_top.mean.size() * sizeof(double)) == 0 &&
        std::memcmp(base.p_top.sem.data(), other.p_top.sem.data(),
                    base.p_top.sem.size() * sizeof(double)) == 0 &&
        std::memcmp(base.xi.mean.data(), other.xi.mean.data(),
                    base.xi.mean.size() * sizeof(double)) == 0 &&
        std::memcmp(base.log_t_top.mean.data(), other.log_t_top.mean.data(),
                    base.log_t_top.mean.size() * sizeof(double)) == 0;
    if (!identical) {
      ++result.failures;
      result.max_error = 1.0;
    }
  }
  return result;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  return {
      flux_conservation_suite(seed, 1000),
      closedform_oracle_suite(seed + 1, 20, 1000),
      identity_suite(seed + 2, 200),
      determinism_suite(seed + 3),
  };
}

}  // namespace wqed
