#include "wqed/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "wqed/ddi.hpp"
#include "wqed/observables.hpp"

namespace wqed {

namespace {

constexpr int kBlockSize = 16;  // realizations per reduction block, fixed forever

struct BlockSums {
  // Welford state per grid point, observable-major layout:
  // [p_bottom, p_top, xi, log_t_top] x [running mean, sum of squared
  // deviations]. The delta form keeps the spread at exactly zero when every
  // realization is identical (sigma = 0), which naive sum-of-squares cannot.
  std::vector<double> data;
  std::int64_t count = 0;  // realizations folded into this block so far

  explicit BlockSums(std::size_t grid_size) : data(grid_size * 8, 0.0) {}

  void start_realization() { ++count; }

  void add(std::size_t point, double pb, double pt, double xi, double log_t) {
    double* cell = data.data() + point * 8;
    const double inv = 1.0 / static_cast<double>(count);
    const double xs[4] = {pb, pt, xi, log_t};
    for (int k = 0; k < 4; ++k) {
      const double delta = xs[k] - cell[2 * k];
      cell[2 * k] += delta * inv;
      cell[2 * k + 1] += delta * (xs[k] - cell[2 * k]);
    }
  }

  void fold(const BlockSums& other) {
    if (other.count == 0) return;
    if (count == 0) {
      data = other.data;
      count = other.count;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double weight = nb / (na + nb);
    for (std::size_t cell = 0; cell + 1 < data.size(); cell += 2) {
      const double delta = other.data[cell] - data[cell];
      data[cell] += delta * weight;
      data[cell + 1] += other.data[cell + 1] + delta * delta * na * weight;
    }
    count += other.count;
  }
};

void accumulate_realization(const DisorderSpec& spec, int n, const EmitterParams& emitter,
                            ChiralityMode mode, const UnitSystem& units,
                            const std::vector<double>& grid, std::uint64_t realization,
                            BlockSums& sums) {
  ScatterProblem problem;
  problem.chain = sample_chain(spec, n, emitter, realization);
  problem.ddi = ddi_matrix(problem.chain, units);
  problem.mode = mode;
  problem.units = units;

  sums.start_realization();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    problem.delta = grid[i];
    const TransportSolution sol = solve_transport(problem);
    const double pb = sol.transmission_bottom();
    const double pt = sol.transmission_top();
    const double xi = pt + pb > 0.0 ? (pt - pb) / (pt + pb)
                                    : std::numeric_limits<double>::quiet_NaN();
    const double log_t = std::log(pt);
    sums.add(i, pb, pt, xi, log_t);
  }
}

SeriesStats finalize_series(const std::vector<double>& totals, std::size_t grid_size, int which,
                            int n_real) {
  SeriesStats stats;
  stats.mean.resize(grid_size);
  stats.sem.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    stats.mean[i] = totals[i * 8 + static_cast<std::size_t>(2 * which)];
    const double m2 = totals[i * 8 + static_cast<std::size_t>(2 * which) + 1];
    stats.sem[i] = n_real > 1 ? std::sqrt(m2 / (n_real - 1) / n_real)
                              : std::numeric_limits<double>::quiet_NaN();
  }
  return stats;
}

}  // namespace

EnsembleStats run_ensemble(const DisorderSpec& spec, int n, const EmitterParams& emitter,
                           ChiralityMode mode, const UnitSystem& units,
                           const std::vector<double>& grid, const EnsembleConfig& config) {
  spec.validate();
  emitter.validate();
  units.validate();
  if (n < 1) throw std::invalid_argument("run_ensemble: n must be >= 1");
  if (config.n_realizations < 1)
    throw std::invalid_argument("run_ensemble: n_realizations must be >= 1");
  if (grid.empty()) throw std::invalid_argument("run_ensemble: empty detuning grid");

  const int n_real = config.n_realizations;
  const int n_blocks = (n_real + kBlockSize - 1) / kBlockSize;
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (threads > n_blocks) threads = n_blocks;

  // Every block is accumulated serially over its own realizations, whichever
  // thread picks it up; folding happens in block order afterwards. The
  // arithmetic is therefore independent of the thread count.
  std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks), BlockSums(grid.size()));
  std::atomic<int> next_block{0};
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const int b = next_block.fetch_add(1);
      if (b >= n_blocks || failed.load()) return;
      const int first = b * kBlockSize;
      const int last = std::min(first + kBlockSize, n_real);
      try {
        for (int r = first; r < last; ++r) {
          accumulate_realization(spec, n, emitter, mode, units, grid,
                                 static_cast<std::uint64_t>(r),
                                 blocks[static_cast<std::size_t>(b)]);
        }
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure_message.empty()) failure_message = e.what();
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw std::runtime_error("run_ensemble: " + failure_message);

  BlockSums totals(grid.size());
  for (const auto& block : blocks) totals.fold(block);

  EnsembleStats stats;
  stats.delta = grid;
  stats.n_realizations = n_real;
  stats.p_bottom = finalize_series(totals.data, grid.size(), 0, n_real);
  stats.p_top = finalize_series(totals.data, grid.size(), 1, n_real);
  stats.xi = finalize_series(totals.data, grid.size(), 2, n_real);
  stats.log_t_top = finalize_series(totals.data, grid.size(), 3, n_real);
  return stats;
}

std::vector<LocalizationPoint> localization_sweep(
    const DisorderSpec& base_spec, const EmitterParams& emitter, ChiralityMode mode,
    const UnitSystem& units, const std::vector<int>& n_values,
    const std::vector<double>& delta_for_n, const std::vector<double>& sigma_fractions,
    const EnsembleConfig& config) {
  if (n_values.size() != delta_for_n.size())
    throw std::invalid_argument("localization_sweep: one detuning per chain size required");

  std::vector<LocalizationPoint> points;
  points.reserve(n_values.size() * sigma_fractions.size());
  for (std::size_t a = 0; a < n_values.size(); ++a) {
    for (const double sigma : sigma_fractions) {
      DisorderSpec spec = base_spec;
      spec.sigma_fraction = sigma;
      EnsembleConfig local = config;
      if (sigma == 0.0) local.n_realizations = 1;  // periodic chain, nothing to average

      const std::vector<double> grid{delta_for_n[a]};
      const EnsembleStats stats =
          run_ensemble(spec, n_values[a], emitter, mode, units, grid, local);

      LocalizationPoint point;
      point.n = n_values[a];
      point.sigma_fraction = sigma;
      point.delta = delta_for_n[a];
      point.t_mean = stats.p_top.mean[0];
      point.t_sem = stats.p_top.sem[0];
      point.loc_length = localization_length(point.n, point.t_mean);
      point.loc_length_err =
          point.n * point.t_sem / (point.t_mean * point.t_mean);
      const double mean_log = stats.log_t_top.mean[0];
      point.loc_conv = conventional_localization_length(point.n, mean_log);
      point.loc_conv_err = 2.0 * point.n * stats.log_t_top.sem[0] / (mean_log * mean_log);
      points.push_back(point);
    }
  }
  return points;
}

}  // namespace wqed
