#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wqed {

// Physical scales shared by every module. Rates are expressed in units of the
// free-space decay rate gamma0 throughout; lengths are in nanometers.
struct UnitSystem {
  double gamma0_hz = 7.5e6;             // free-space decay rate of one emitter
  double lambda_e_nm = 655.0;           // emitter transition wavelength
  double group_velocity = 299792458.0;  // waveguide group velocity, m/s
  double phase_scale = 1.0;             // multiplier applied to all propagation phases

  double gamma0_rad_per_s() const { return 2.0 * std::numbers::pi * gamma0_hz; }

  // Propagation phase k*x picked up over x_nm nanometers by a photon detuned
  // `delta` (gamma0 units) from the emitter line. The carrier phase common to
  // all amplitudes is dropped; only the detuning-dependent part matters for
  // the port probabilities. At the default scales this is of order 1e-7 rad.
  double phase(double delta, double x_nm) const {
    return phase_scale * delta * gamma0_rad_per_s() * (x_nm * 1e-9) / group_velocity;
  }

  // Emitter-wavenumber separation R = k_e * L = 2*pi*L/lambda_e.
  double dimensionless_separation(double length_nm) const {
    return 2.0 * std::numbers::pi * length_nm / lambda_e_nm;
  }

  void validate() const {
    if (!(gamma0_hz > 0.0)) throw std::invalid_argument("UnitSystem: gamma0_hz must be > 0");
    if (!(lambda_e_nm > 0.0)) throw std::invalid_argument("UnitSystem: lambda_e_nm must be > 0");
    if (!(group_velocity > 0.0)) throw std::invalid_argument("UnitSystem: group_velocity must be > 0");
    if (!std::isfinite(phase_scale)) throw std::invalid_argument("UnitSystem: phase_scale must be finite");
  }
};

}  // namespace wqed
