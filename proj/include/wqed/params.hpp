#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wqed {

// Per-emitter rates, all in gamma0 units. Every emitter in a chain is
// identical; the two waveguides may carry different coupling rates.
struct EmitterParams {
  double gamma = 6.86;              // residual free-space decay
  double big_gamma_bottom = 11.03;  // decay into the bottom guide, per direction
  double big_gamma_top = 11.03;     // decay into the top guide, per direction
  double theta_dipole = std::numbers::pi / 2.0;  // dipole vs chain-axis angle

  void validate() const {
    if (!(gamma >= 0.0)) throw std::invalid_argument("EmitterParams: gamma must be >= 0");
    if (!(big_gamma_bottom >= 0.0))
      throw std::invalid_argument("EmitterParams: big_gamma_bottom must be >= 0");
    if (!(big_gamma_top >= 0.0))
      throw std::invalid_argument("EmitterParams: big_gamma_top must be >= 0");
    if (!std::isfinite(theta_dipole))
      throw std::invalid_argument("EmitterParams: theta_dipole must be finite");
  }
};

// Whether emitters couple to a single propagation direction per guide or to
// both. In bidirectional mode the left-moving coupling equals the
// right-moving one, so each guide decays at twice the per-direction rate.
enum class ChiralityMode { chiral, bidirectional };

// Emitters sit at the same longitudinal coordinates in both guides.
struct EmitterChain {
  std::vector<double> positions_nm;  // ascending, first entry at 0
  EmitterParams emitter;

  int count() const { return static_cast<int>(positions_nm.size()); }

  // Chains produced by build_periodic_chain and sample_chain start at 0; the
  // solver itself only needs ascending coordinates (port probabilities are
  // invariant under rigid translation, and tests exercise exactly that).
  void validate() const {
    if (positions_nm.empty()) throw std::invalid_argument("EmitterChain: need at least one emitter");
    if (!std::isfinite(positions_nm.front()))
      throw std::invalid_argument("EmitterChain: positions must be finite");
    for (std::size_t j = 1; j < positions_nm.size(); ++j) {
      if (!(positions_nm[j] > positions_nm[j - 1]))
        throw std::invalid_argument("EmitterChain: positions must be strictly ascending");
    }
    emitter.validate();
  }
};

EmitterChain build_periodic_chain(int n, double spacing_nm, const EmitterParams& emitter);

// Coupling amplitude V calibrated so that V^2 / v equals the decay rate into
// the channel: V = sqrt(big_gamma * v).
double coupling_amplitude(double big_gamma, double group_velocity);

}  // namespace wqed
