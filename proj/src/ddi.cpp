#include "wqed/ddi.hpp"

#include <cmath>
#include <stdexcept>

namespace wqed {

double ddi_coupling(double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("ddi_coupling: separation must be > 0");

  const double c = std::cos(r);
  const double s = std::sin(r);
  const double r2 = r * r;
  const double r3 = r2 * r;
  const double ct = std::cos(theta);

  const double isotropic = 0.75 * (c / r3 + s / r2 - c / r);
  const double axial = ct * ct * (c / r - 3.0 * c / r3 - 3.0 * s / r2);
  return isotropic + axial;
}

Eigen::MatrixXd ddi_matrix(const EmitterChain& chain, const UnitSystem& units) {
  chain.validate();
  units.validate();

  const int n = chain.count();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double d_nm = chain.positions_nm[static_cast<std::size_t>(b)] -
                          chain.positions_nm[static_cast<std::size_t>(a)];
      const double value =
          ddi_coupling(units.dimensionless_separation(d_nm), chain.emitter.theta_dipole);
      j(a, b) = value;
      j(b, a) = value;
    }
  }
  return j;
}

}  // namespace wqed
