#include "wqed/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wqed {

void ScatterProblem::validate() const {
  chain.validate();
  units.validate();
  const int n = chain.count();
  if (ddi.rows() != n || ddi.cols() != n)
    throw std::invalid_argument("ScatterProblem: ddi matrix must be n x n");
  if (!ddi.isApprox(ddi.transpose(), 1e-12))
    throw std::invalid_argument("ScatterProblem: ddi matrix must be symmetric");
  if (!std::isfinite(delta)) throw std::invalid_argument("ScatterProblem: delta must be finite");
  if (group_velocity_top == 0.0 || (group_velocity_top > 0.0 && !std::isfinite(group_velocity_top)))
    throw std::invalid_argument("ScatterProblem: group_velocity_top must be positive or negative-sentinel");
}

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

}  // namespace

TransportSolution solve_transport(const ScatterProblem& problem) {
  problem.validate();

  const int n = problem.chain.count();
  const auto& x = problem.chain.positions_nm;
  const EmitterParams& em = problem.chain.emitter;

  // Internally v = 1, so the per-direction channel rates double as squared
  // coupling amplitudes. Group velocities only enter through the wavenumbers.
  const double g_b = em.big_gamma_bottom;
  const double g_t = em.big_gamma_top;
  const bool bidir = problem.mode == ChiralityMode::bidirectional;
  const double g_bl = bidir ? g_b : 0.0;
  const double g_tl = bidir ? g_t : 0.0;
  const double v_b = std::sqrt(g_b);
  const double v_t = std::sqrt(g_t);
  const double v_bl = std::sqrt(g_bl);
  const double v_tl = std::sqrt(g_tl);

  // Phase per emitter, one guide each; pairwise factors come from products of
  // these so only n exponentials are evaluated per guide.
  const double k_scale = problem.units.phase(problem.delta, 1.0);
  const double m_scale = k_scale * problem.units.group_velocity / problem.v_top();
  Eigen::VectorXcd eb(n), et(n);
  for (int j = 0; j < n; ++j) {
    eb(j) = std::polar(1.0, k_scale * x[static_cast<std::size_t>(j)]);
    et(j) = std::polar(1.0, m_scale * x[static_cast<std::size_t>(j)]);
  }

  const cd self_energy =
      kI * (em.gamma / 2.0 + (g_b + g_t + g_bl + g_tl) / 2.0);

  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) {
        m(j, j) = problem.delta + self_energy;
      } else if (i < j) {
        // Downstream emitter j driven by the right-moving field of emitter i.
        const cd phase_b = eb(j) * std::conj(eb(i));
        const cd phase_t = et(j) * std::conj(et(i));
        m(j, i) = -problem.ddi(j, i) + kI * g_b * phase_b + kI * g_t * phase_t;
      } else {
        // Left movers only exist in bidirectional mode.
        const cd phase_b = eb(i) * std::conj(eb(j));
        const cd phase_t = et(i) * std::conj(et(j));
        m(j, i) = -problem.ddi(j, i) + kI * g_bl * phase_b + kI * g_tl * phase_t;
      }
    }
  }

  Eigen::VectorXcd rhs(n);
  for (int j = 0; j < n; ++j) rhs(j) = v_b * eb(j);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);

  // Guard against a singular system (gamma = big_gamma = 0 with the detuning
  // at an eigenvalue of the ddi matrix). A vanishing pivot catches the
  // rhs = 0 case where the solve itself would quietly return zeros.
  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  for (int j = 0; j < n; ++j) {
    const double pivot = std::abs(lu.matrixLU()(j, j));
    min_pivot = std::min(min_pivot, pivot);
    max_pivot = std::max(max_pivot, pivot);
  }
  if (!(max_pivot > 0.0) || min_pivot <= 1e-14 * max_pivot)
    throw std::runtime_error("solve_transport: singular amplitude system (detuning at a bare pole)");

  Eigen::VectorXcd a = lu.solve(rhs);
  const double residual = (m * a - rhs).norm();
  const double scale = std::max({rhs.norm(), m.norm() * a.norm(), 1e-300});
  if (!(residual <= 1e-8 * scale) || !a.allFinite())
    throw std::runtime_error("solve_transport: singular amplitude system (detuning at a bare pole)");

  TransportSolution sol;
  sol.amplitudes = a;
  sol.t_bottom.assign(static_cast<std::size_t>(n) + 1, cd{0.0, 0.0});
  sol.t_top.assign(static_cast<std::size_t>(n) + 1, cd{0.0, 0.0});
  sol.r_bottom.assign(static_cast<std::size_t>(n) + 1, cd{0.0, 0.0});
  sol.r_top.assign(static_cast<std::size_t>(n) + 1, cd{0.0, 0.0});

  // Right movers grow segment by segment from the incoming wave, left movers
  // from the quiet region behind the last emitter.
  sol.t_bottom[0] = cd{1.0, 0.0};
  for (int j = 1; j <= n; ++j) {
    const cd drop_b = kI * v_b * a(j - 1) * std::conj(eb(j - 1));
    const cd drop_t = kI * v_t * a(j - 1) * std::conj(et(j - 1));
    sol.t_bottom[static_cast<std::size_t>(j)] = sol.t_bottom[static_cast<std::size_t>(j) - 1] - drop_b;
    sol.t_top[static_cast<std::size_t>(j)] = sol.t_top[static_cast<std::size_t>(j) - 1] - drop_t;
  }
  for (int j = n; j >= 1; --j) {
    const cd drop_b = kI * v_bl * a(j - 1) * eb(j - 1);
    const cd drop_t = kI * v_tl * a(j - 1) * et(j - 1);
    sol.r_bottom[static_cast<std::size_t>(j) - 1] = sol.r_bottom[static_cast<std::size_t>(j)] - drop_b;
    sol.r_top[static_cast<std::size_t>(j) - 1] = sol.r_top[static_cast<std::size_t>(j)] - drop_t;
  }
  return sol;
}

FieldProfile field_profile(const ScatterProblem& problem, const TransportSolution& solution,
                           const std::vector<double>& grid_nm) {
  const int n = problem.chain.count();
  if (static_cast<int>(solution.t_bottom.size()) != n + 1)
    throw std::invalid_argument("field_profile: solution does not match the problem size");

  const double k_scale = problem.units.phase(problem.delta, 1.0);
  const double m_scale = k_scale * problem.units.group_velocity / problem.v_top();
  const auto& x = problem.chain.positions_nm;

  FieldProfile profile;
  profile.x_nm = grid_nm;
  profile.bottom_right.reserve(grid_nm.size());
  profile.bottom_left.reserve(grid_nm.size());
  profile.top_right.reserve(grid_nm.size());
  profile.top_left.reserve(grid_nm.size());

  for (const double pos : grid_nm) {
    const auto upper = std::upper_bound(x.begin(), x.end(), pos);
    const auto segment = static_cast<std::size_t>(upper - x.begin());
    const cd fwd_b = std::polar(1.0, k_scale * pos);
    const cd fwd_t = std::polar(1.0, m_scale * pos);
    profile.bottom_right.push_back(solution.t_bottom[segment] * fwd_b);
    profile.bottom_left.push_back(solution.r_bottom[segment] * std::conj(fwd_b));
    profile.top_right.push_back(solution.t_top[segment] * fwd_t);
    profile.top_left.push_back(solution.r_top[segment] * std::conj(fwd_t));
  }
  return profile;
}

}  // namespace wqed
