#pragma once

#include <cstdint>
#include <vector>

#include "wqed/disorder.hpp"
#include "wqed/scatter.hpp"

namespace wqed {

struct EnsembleConfig {
  int n_realizations = 1000;
  int threads = 0;  // 0 means hardware concurrency
};

// Per-grid-point mean and standard error of the mean. The standard error is
// NaN for a single realization (undefined, never reported as zero).
struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> sem;
};

struct EnsembleStats {
  std::vector<double> delta;
  SeriesStats p_bottom;   // port 2 probability
  SeriesStats p_top;      // port 4 probability
  SeriesStats xi;         // per-realization routing efficiency (NaN rows where undefined)
  SeriesStats log_t_top;  // ln of the top transmission, for localization estimates
  int n_realizations = 0;
};

// Disorder-averaged spectra. Realization r uses the chain
// sample_chain(spec, n, emitter, r) with its dipole couplings rebuilt from the
// drawn positions. Results are bit-identical for any thread count: workers
// process fixed blocks of 16 consecutive realizations, each block accumulated
// serially in index order, and the block sums are folded in block order at
// the end.
EnsembleStats run_ensemble(const DisorderSpec& spec, int n, const EmitterParams& emitter,
                           ChiralityMode mode, const UnitSystem& units,
                           const std::vector<double>& grid, const EnsembleConfig& config);

struct LocalizationPoint {
  int n = 0;
  double sigma_fraction = 0.0;
  double delta = 0.0;
  double t_mean = 0.0;
  double t_sem = 0.0;
  double loc_length = 0.0;       // n / <T_top>
  double loc_length_err = 0.0;   // delta-method propagation of t_sem
  double loc_conv = 0.0;         // -2 n / <ln T_top>
  double loc_conv_err = 0.0;
};

// Localization estimates on a (n, sigma) grid, each chain size evaluated at
// its own fixed detuning. sigma_fraction = 0 degenerates to the periodic
// chain (single realization, NaN errors).
std::vector<LocalizationPoint> localization_sweep(
    const DisorderSpec& base_spec, const EmitterParams& emitter, ChiralityMode mode,
    const UnitSystem& units, const std::vector<int>& n_values,
    const std::vector<double>& delta_for_n, const std::vector<double>& sigma_fractions,
    const EnsembleConfig& config);

}  // namespace wqed
