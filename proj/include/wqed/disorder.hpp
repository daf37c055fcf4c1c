#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wqed/params.hpp"
#include "wqed/units.hpp"

namespace wqed {

// Gaussian spacing disorder. Chains are built from cumulative separations:
// x_1 = 0 and x_j = x_{j-1} + d_j with d_j ~ N(mu, (sigma_fraction*mu)^2),
// each d_j redrawn while it falls below min_separation.
struct DisorderSpec {
  double mean_spacing_nm = 32.75;   // mu
  double sigma_fraction = 0.1;      // standard deviation as a fraction of mu
  double min_separation_nm = -1.0;  // negative means "use mu/1000"
  std::uint64_t master_seed = 42;

  double effective_min_separation() const {
    return min_separation_nm < 0.0 ? mean_spacing_nm / 1000.0 : min_separation_nm;
  }

  void validate() const;
};

namespace rngdetail {

// The random stream is frozen: golden files and ensemble reruns depend on the
// exact draw sequence, so no implementation-defined distribution code is used
// anywhere. Realization r uses
//   engine = mt19937_64( splitmix64( master_seed ^ (0x9E3779B97F4A7C15 * (r+1)) ) )
// and each normal variate consumes exactly two engine draws via Box-Muller,
//   z = sqrt(-2 ln u1) * cos(2 pi u2),  u1 in (0,1],  u2 in [0,1).
std::uint64_t splitmix64(std::uint64_t z);
std::mt19937_64 realization_engine(std::uint64_t master_seed, std::uint64_t realization_index);
double draw_unit_normal(std::mt19937_64& engine);

}  // namespace rngdetail

// Deterministic pure function of (spec, n, realization_index): the same
// arguments always produce the same chain, regardless of call order or
// threading. Throws std::runtime_error if one separation needs more than
// one million redraws to clear min_separation.
EmitterChain sample_chain(const DisorderSpec& spec, int n, const EmitterParams& emitter,
                          std::uint64_t realization_index);

struct DdiCurvePoint {
  double separation_nm = 0.0;
  double k_l_over_pi = 0.0;      // R/pi = 2 L / lambda_e
  double j_periodic = 0.0;       // coupling at the nominal separation
  double j_disordered_mean = 0.0;
  double j_disordered_sem = 0.0;  // NaN when n_realizations == 1
};

// Disorder-averaged two-emitter coupling versus nominal separation. For each
// grid value L the separation is drawn as in sample_chain with mu = L, and
// the coupling is averaged over n_realizations draws.
std::vector<DdiCurvePoint> mean_ddi_curve(const DisorderSpec& spec,
                                          const std::vector<double>& separation_grid_nm,
                                          int n_realizations, double theta_dipole,
                                          const UnitSystem& units);

}  // namespace wqed
