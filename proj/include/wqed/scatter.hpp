#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wqed/params.hpp"
#include "wqed/units.hpp"

namespace wqed {

// Single-photon transport through a chain of emitters side-coupled to two
// parallel waveguides ("bottom" and "top"). The photon enters from the left
// in the bottom guide. Ports: 1 bottom-left (input side), 2 bottom-right,
// 3 top-left, 4 top-right.
struct ScatterProblem {
  EmitterChain chain;
  Eigen::MatrixXd ddi;  // symmetric pairwise shifts, gamma0 units; zero diagonal
  double delta = 0.0;   // photon detuning from the emitter line, gamma0 units
  ChiralityMode mode = ChiralityMode::chiral;
  UnitSystem units;
  double group_velocity_top = -1.0;  // negative means "same as units.group_velocity"

  double v_bottom() const { return units.group_velocity; }
  double v_top() const {
    return group_velocity_top < 0.0 ? units.group_velocity : group_velocity_top;
  }

  void validate() const;
};

// Piecewise plane-wave coefficients of the scattering state. Segment s is the
// region between emitter s and emitter s+1 (segment 0 lies left of the chain,
// segment n right of it), so each coefficient vector has n+1 entries.
// t_* hold right-mover coefficients, r_* hold left movers. Amplitudes are the
// emitter excitation amplitudes in v = 1 normalization.
struct TransportSolution {
  Eigen::VectorXcd amplitudes;
  std::vector<std::complex<double>> t_bottom, t_top;
  std::vector<std::complex<double>> r_bottom, r_top;

  double transmission_bottom() const { return std::norm(t_bottom.back()); }
  double transmission_top() const { return std::norm(t_top.back()); }
  double reflection_bottom() const { return std::norm(r_bottom.front()); }
  double reflection_top() const { return std::norm(r_top.front()); }
  double outgoing_total() const {
    return transmission_bottom() + transmission_top() + reflection_bottom() + reflection_top();
  }
  double loss() const { return 1.0 - outgoing_total(); }
};

// Solves the steady-state amplitude equations and reconstructs the four port
// coefficients. Emitter j sees the boundary-averaged field (mean of the
// segment coefficients on its two sides), which is what makes the amplitude
// system closed. Throws std::runtime_error when the linear system is
// singular (possible only for gamma = big_gamma = 0 with the detuning at an
// eigenvalue of the coupling matrix) rather than returning garbage.
TransportSolution solve_transport(const ScatterProblem& problem);

// Field amplitudes of the four movers evaluated on a coordinate grid (nm).
// The piecewise ansatz is defined on the whole axis; values are only
// physically meaningful near the chain span.
struct FieldProfile {
  std::vector<double> x_nm;
  std::vector<std::complex<double>> bottom_right, bottom_left, top_right, top_left;
};

FieldProfile field_profile(const ScatterProblem& problem, const TransportSolution& solution,
                           const std::vector<double>& grid_nm);

}  // namespace wqed
