#pragma once

#include <vector>

#include "wqed/scatter.hpp"

namespace wqed {

// Normalized transmission imbalance (p_top - p_bottom) / (p_top + p_bottom).
// Throws std::domain_error when both probabilities vanish.
double routing_efficiency(double p_top, double p_bottom);

// Inclusive grid lo, lo+step, ..., hi (last point clipped to hi when the
// range is not an exact multiple of step).
std::vector<double> delta_grid(double lo, double hi, double step);

struct Spectrum {
  std::vector<double> delta;
  std::vector<double> p_bottom;  // port 2
  std::vector<double> p_top;     // port 4
  std::vector<double> xi;
};

// Port probabilities of a fixed chain across a detuning grid. The template's
// own delta is ignored.
Spectrum spectrum(const ScatterProblem& base, const std::vector<double>& grid);

struct PmaxResult {
  int n = 0;
  double p_max = 0.0;
  double delta_max = 0.0;
  bool at_boundary = false;  // peak pinned to an end of the scan range
};

// Peak top-guide transmission over a detuning range: coarse scan at
// `coarse_step`, then golden-section refinement of the bracketing interval
// down to `refine_tol`. The refined value never falls below the best coarse
// sample.
PmaxResult pmax_scan(const ScatterProblem& base, double delta_lo, double delta_hi,
                     double coarse_step = 0.1, double refine_tol = 1e-3);

// Chain length over mean top transmission. Returns +infinity when the mean
// vanishes (flagged by the caller, never thrown).
double localization_length(int n, double mean_t_top);

// Conventional estimator -2 n / <ln T_top>, exposed for comparison with the
// ratio form above.
double conventional_localization_length(int n, double mean_log_t_top);

}  // namespace wqed
