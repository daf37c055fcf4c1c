#include "wqed/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wqed {

double routing_efficiency(double p_top, double p_bottom) {
  if (!(p_top >= 0.0) || !(p_bottom >= 0.0))
    throw std::domain_error("routing_efficiency: probabilities must be non-negative");
  const double total = p_top + p_bottom;
  if (total <= 0.0) throw std::domain_error("routing_efficiency: both transmissions vanish");
  return (p_top - p_bottom) / total;
}

std::vector<double> delta_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("delta_grid: step must be > 0");
  if (!(hi >= lo)) throw std::invalid_argument("delta_grid: hi must be >= lo");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(static_cast<std::size_t>(count) + 2);
  for (long i = 0; i <= count; ++i) grid.push_back(lo + step * static_cast<double>(i));
  if (grid.back() < hi - 1e-9 * step) grid.push_back(hi);
  return grid;
}

Spectrum spectrum(const ScatterProblem& base, const std::vector<double>& grid) {
  Spectrum out;
  out.delta = grid;
  out.p_bottom.reserve(grid.size());
  out.p_top.reserve(grid.size());
  out.xi.reserve(grid.size());

  ScatterProblem problem = base;
  for (const double d : grid) {
    problem.delta = d;
    const TransportSolution sol = solve_transport(problem);
    const double pb = sol.transmission_bottom();
    const double pt = sol.transmission_top();
    out.p_bottom.push_back(pb);
    out.p_top.push_back(pt);
    out.xi.push_back(pt + pb > 0.0 ? (pt - pb) / (pt + pb)
                                   : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

namespace {

double top_transmission_at(ScatterProblem& problem, double delta) {
  problem.delta = delta;
  return solve_transport(problem).transmission_top();
}

}  // namespace

PmaxResult pmax_scan(const ScatterProblem& base, double delta_lo, double delta_hi,
                     double coarse_step, double refine_tol) {
  if (!(delta_hi > delta_lo)) throw std::invalid_argument("pmax_scan: empty detuning range");
  if (!(coarse_step > 0.0) || !(refine_tol > 0.0))
    throw std::invalid_argument("pmax_scan: steps must be > 0");

  ScatterProblem problem = base;
  const std::vector<double> grid = delta_grid(delta_lo, delta_hi, coarse_step);

  std::size_t best = 0;
  double best_value = -1.0;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = top_transmission_at(problem, grid[i]);
    if (values[i] > best_value) {
      best_value = values[i];
      best = i;
    }
  }

  PmaxResult result;
  result.n = base.chain.count();
  result.at_boundary = best == 0 || best + 1 == grid.size();

  // Golden-section refinement inside the bracketing neighbours. The coarse
  // winner stays the floor of the answer, so refinement can only improve it.
  double lo = grid[best > 0 ? best - 1 : best];
  double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  constexpr double kInvPhi = 0.6180339887498949;
  double a = hi - (hi - lo) * kInvPhi;
  double b = lo + (hi - lo) * kInvPhi;
  double fa = top_transmission_at(problem, a);
  double fb = top_transmission_at(problem, b);
  while (hi - lo > refine_tol) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + (hi - lo) * kInvPhi;
      fb = top_transmission_at(problem, b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - (hi - lo) * kInvPhi;
      fa = top_transmission_at(problem, a);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = top_transmission_at(problem, mid);

  result.p_max = best_value;
  result.delta_max = grid[best];
  for (const auto& [candidate, value] :
       {std::pair{a, fa}, std::pair{b, fb}, std::pair{mid, fmid}}) {
    if (value > result.p_max) {
      result.p_max = value;
      result.delta_max = candidate;
    }
  }
  return result;
}

double localization_length(int n, double mean_t_top) {
  if (n < 1) throw std::invalid_argument("localization_length: n must be >= 1");
  if (!(mean_t_top >= 0.0) || !(mean_t_top <= 1.0))
    throw std::invalid_argument("localization_length: mean transmission must lie in [0, 1]");
  if (mean_t_top == 0.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(n) / mean_t_top;
}

double conventional_localization_length(int n, double mean_log_t_top) {
  if (n < 1) throw std::invalid_argument("conventional_localization_length: n must be >= 1");
  if (!(mean_log_t_top < 0.0))
    throw std::invalid_argument("conventional_localization_length: <ln T> must be negative");
  return -2.0 * static_cast<double>(n) / mean_log_t_top;
}

}  // namespace wqed
