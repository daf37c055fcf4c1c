#pragma once

#include <complex>

namespace wqed {

// Analytic reference amplitudes for small chains with chiral, equal coupling
// to both guides (big_gamma per guide). Used as oracles for the general
// solver; all rates in gamma0 units.

// Single emitter, photon incident in the bottom guide.
std::complex<double> t_bottom_single(double delta, double gamma, double big_gamma);
std::complex<double> t_top_single(double delta, double gamma, double big_gamma);

// Two emitters with dipole-dipole shift `ddi` and propagation phase
// `phase` = k * x_12 (radians) accumulated between them.
struct TwoEmitterParams {
  double gamma = 0.0;
  double big_gamma = 1.0;
  double ddi = 0.0;
  double phase = 0.0;
};

std::complex<double> t_bottom_two(const TwoEmitterParams& p, double delta);
std::complex<double> t_top_two(const TwoEmitterParams& p, double delta);

// Routing efficiency from the two-emitter transmissions,
// (|t_top|^2 - |t_bottom|^2) / (|t_top|^2 + |t_bottom|^2). Valid for any
// gamma. Throws std::domain_error when both transmissions vanish.
double xi_two_from_amplitudes(const TwoEmitterParams& p, double delta);

// Closed-form routing efficiency written as a single rational expression.
// Exact (real, in [-1, 1]) for the lossless case gamma = 0; away from that
// it acquires an imaginary part and its real part is not the probability
// imbalance, so it is kept only as a lossless-case oracle.
std::complex<double> xi_two_closed(const TwoEmitterParams& p, double delta);

}  // namespace wqed
