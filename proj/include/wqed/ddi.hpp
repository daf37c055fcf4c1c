#pragma once

#include <Eigen/Dense>

#include "wqed/params.hpp"
#include "wqed/units.hpp"

namespace wqed {

// Resonant dipole-dipole shift between two emitters separated by R emitter
// wavenumbers (R = 2*pi*d/lambda_e), with the dipoles tilted `theta` from the
// interatomic axis. Returned in gamma0 units. Diverges as (3/4)/R^3 for
// R -> 0 and decays as a damped 1/R oscillation for R >> 1.
double ddi_coupling(double r_dimensionless, double theta);

// Full pairwise coupling matrix for a chain: symmetric, zero diagonal,
// J(i,j) = ddi_coupling(R(|x_i - x_j|), theta_dipole).
Eigen::MatrixXd ddi_matrix(const EmitterChain& chain, const UnitSystem& units);

}  // namespace wqed
