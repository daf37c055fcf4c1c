#include "wqed/disorder.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wqed/ddi.hpp"

namespace wqed {

void DisorderSpec::validate() const {
  if (!(mean_spacing_nm > 0.0))
    throw std::invalid_argument("DisorderSpec: mean_spacing_nm must be > 0");
  if (!(sigma_fraction >= 0.0))
    throw std::invalid_argument("DisorderSpec: sigma_fraction must be >= 0");
  if (min_separation_nm >= 0.0 && !(min_separation_nm < mean_spacing_nm))
    throw std::invalid_argument("DisorderSpec: min_separation_nm must stay below the mean spacing");
}

namespace rngdetail {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 realization_engine(std::uint64_t master_seed, std::uint64_t realization_index) {
  const std::uint64_t stream = master_seed ^ (0x9E3779B97F4A7C15ULL * (realization_index + 1));
  return std::mt19937_64(splitmix64(stream));
}

double draw_unit_normal(std::mt19937_64& engine) {
  // Two engine draws per variate, always. 0x1.0p-53 maps the top 53 bits onto
  // [0,1); the +1 shifts u1 into (0,1] so the log stays finite.
  const double u1 = static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rngdetail

namespace {

double draw_guarded_separation(std::mt19937_64& engine, double mu, double sigma, double min_sep) {
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double d = mu + sigma * rngdetail::draw_unit_normal(engine);
    if (d >= min_sep) return d;
  }
  throw std::runtime_error("sample_chain: separation draw failed to clear the minimum after 1e6 tries");
}

}  // namespace

EmitterChain sample_chain(const DisorderSpec& spec, int n, const EmitterParams& emitter,
                          std::uint64_t realization_index) {
  spec.validate();
  emitter.validate();
  if (n < 1) throw std::invalid_argument("sample_chain: n must be >= 1");

  auto engine = rngdetail::realization_engine(spec.master_seed, realization_index);
  const double sigma = spec.sigma_fraction * spec.mean_spacing_nm;
  const double min_sep = spec.effective_min_separation();

  EmitterChain chain;
  chain.emitter = emitter;
  chain.positions_nm.resize(static_cast<std::size_t>(n));
  chain.positions_nm[0] = 0.0;
  for (int j = 1; j < n; ++j) {
    const double d = draw_guarded_separation(engine, spec.mean_spacing_nm, sigma, min_sep);
    chain.positions_nm[static_cast<std::size_t>(j)] =
        chain.positions_nm[static_cast<std::size_t>(j - 1)] + d;
  }
  return chain;
}

std::vector<DdiCurvePoint> mean_ddi_curve(const DisorderSpec& spec,
                                          const std::vector<double>& separation_grid_nm,
                                          int n_realizations, double theta_dipole,
                                          const UnitSystem& units) {
  spec.validate();
  units.validate();
  if (n_realizations < 1)
    throw std::invalid_argument("mean_ddi_curve: n_realizations must be >= 1");

  std::vector<DdiCurvePoint> curve;
  curve.reserve(separation_grid_nm.size());
  for (const double l_nm : separation_grid_nm) {
    if (!(l_nm > 0.0)) throw std::invalid_argument("mean_ddi_curve: separations must be > 0");

    DisorderSpec local = spec;
    local.mean_spacing_nm = l_nm;
    local.min_separation_nm =
        spec.min_separation_nm < 0.0 ? -1.0 : spec.min_separation_nm;  // keep the mu/1000 default

    DdiCurvePoint point;
    point.separation_nm = l_nm;
    point.k_l_over_pi = units.dimensionless_separation(l_nm) / std::numbers::pi;
    point.j_periodic = ddi_coupling(units.dimensionless_separation(l_nm), theta_dipole);

    const double sigma = local.sigma_fraction * l_nm;
    const double min_sep = local.effective_min_separation();
    // Welford keeps sigma = 0 exact: mean identical to j_periodic, spread 0.
    double mean = 0.0;
    double m2 = 0.0;
    for (int r = 0; r < n_realizations; ++r) {
      auto engine = rngdetail::realization_engine(local.master_seed, static_cast<std::uint64_t>(r));
      const double d = draw_guarded_separation(engine, l_nm, sigma, min_sep);
      const double j = ddi_coupling(units.dimensionless_separation(d), theta_dipole);
      const double delta = j - mean;
      mean += delta / (r + 1);
      m2 += delta * (j - mean);
    }
    point.j_disordered_mean = mean;
    point.j_disordered_sem = n_realizations > 1
                                 ? std::sqrt(m2 / (n_realizations - 1) / n_realizations)
                                 : std::numeric_limits<double>::quiet_NaN();
    curve.push_back(point);
  }
  return curve;
}

}  // namespace wqed
