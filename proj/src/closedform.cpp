#include "wqed/closedform.hpp"

#include <cmath>
#include <stdexcept>

namespace wqed {

namespace {
using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
}  // namespace

std::complex<double> t_bottom_single(double delta, double gamma, double big_gamma) {
  return (delta + kI * (gamma / 2.0)) / (delta + kI * (gamma / 2.0 + big_gamma));
}

std::complex<double> t_top_single(double delta, double gamma, double big_gamma) {
  return -kI * big_gamma / (delta + kI * (gamma / 2.0 + big_gamma));
}

std::complex<double> t_bottom_two(const TwoEmitterParams& p, double delta) {
  const double g = p.gamma, gg = p.big_gamma, j = p.ddi;
  const cd ph = std::polar(1.0, p.phase);
  const cd den = 4.0 * j * j - 8.0 * kI * ph * j * gg +
                 std::pow(cd{g + 2.0 * gg, -2.0 * delta}, 2);
  const cd num = 4.0 * j * j + 4.0 * gg * gg + std::pow(cd{g, -2.0 * delta}, 2) +
                 8.0 * j * gg * std::sin(p.phase);
  return num / den;
}

std::complex<double> t_top_two(const TwoEmitterParams& p, double delta) {
  const double g = p.gamma, gg = p.big_gamma, j = p.ddi;
  const cd ph = std::polar(1.0, p.phase);
  const cd den = 4.0 * j * j - 8.0 * kI * ph * j * gg +
                 std::pow(cd{g + 2.0 * gg, -2.0 * delta}, 2);
  const cd num = 4.0 * kI * gg * (kI * g + 2.0 * delta + 2.0 * j * std::cos(p.phase));
  return num / den;
}

double xi_two_from_amplitudes(const TwoEmitterParams& p, double delta) {
  const double pt = std::norm(t_top_two(p, delta));
  const double pb = std::norm(t_bottom_two(p, delta));
  if (pt + pb <= 0.0)
    throw std::domain_error("xi_two_from_amplitudes: both transmissions vanish");
  return (pt - pb) / (pt + pb);
}

std::complex<double> xi_two_closed(const TwoEmitterParams& p, double delta) {
  const double g = p.gamma, gg = p.big_gamma, j = p.ddi, d = delta;
  const double c = std::cos(p.phase), s = std::sin(p.phase);
  const cd num = cd{4.0 * j * j + g * g + 4.0 * g * gg + 4.0 * gg * gg - 4.0 * d * d +
                        8.0 * j * gg * s,
                    -4.0 * g * d - 8.0 * gg * d - 8.0 * j * gg * c};
  const cd den = cd{4.0 * j * j + g * g - 4.0 * g * gg + 4.0 * gg * gg - 4.0 * d * d +
                        8.0 * j * gg * s,
                    -4.0 * g * d + 8.0 * gg * d + 8.0 * j * gg * c};
  return -num / den;
}

}  // namespace wqed
