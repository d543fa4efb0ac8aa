#pragma once

#include <Eigen/Core>

namespace shg {

// d^j_{m,n}(beta) = <j m| exp(-i beta J_y) |j n>, rows m = -j..j, columns
// n = -j..j, for 2j = two_j >= 0.
//
// Column n is the unit eigenvector of cos(beta) J_z + sin(beta) J_x with
// eigenvalue n. Signs follow the standard (Condon-Shortley) convention, in
// which the bottom row d^j_{-j,n}(beta) is positive for beta in (0, pi).
Eigen::MatrixXd wigner_d(int two_j, double beta);

// Same, for j given as a half-integer value; throws ArgumentError otherwise.
Eigen::MatrixXd wigner_d(double j, double beta);

}  // namespace shg
