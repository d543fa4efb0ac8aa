#include "shg/wigner.hpp"

#include <cmath>
#include <numbers>

#include "shg/errors.hpp"
#include "shg/tridiagonal.hpp"

namespace shg {

namespace {

Eigen::MatrixXd rotation_on_half_turn(int two_j, double beta) {
  const int n = two_j + 1;
  const double j = 0.5 * two_j;
  if (beta == 0.0) return Eigen::MatrixXd::Identity(n, n);
  if (beta == std::numbers::pi) {
    // d_{m,n}(pi) = (-1)^{j-n} delta_{m,-n}
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v) d(two_j - v, v) = ((two_j - v) % 2 == 0) ? 1.0 : -1.0;
    return d;
  }
  Eigen::VectorXd diag(n), off(n - 1);
  const double c = std::cos(beta), s = std::sin(beta);
  for (int f = 0; f < n; ++f) diag(f) = c * (f - j);
  for (int f = 0; f + 1 < n; ++f) {
    const double m = f - j;
    off(f) = 0.5 * s * std::sqrt((j - m) * (j + m + 1.0));
  }
  return tridiagonal_eigen_oracle(diag, off, true).vectors;
}

}  // namespace

Eigen::MatrixXd wigner_d(int two_j, double beta) {
  if (two_j < 0) throw ArgumentError("wigner_d: 2j must be >= 0");
  if (!std::isfinite(beta)) throw ArgumentError("wigner_d: beta must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  // d(beta + 2 pi) = (-1)^{2j} d(beta); d(-beta) = d(beta)^T.
  const double reduced = std::remainder(beta, two_pi);
  const long turns = std::lround((beta - reduced) / two_pi);
  const double parity = (two_j % 2 == 1 && turns % 2 != 0) ? -1.0 : 1.0;
  if (reduced < 0.0) return parity * rotation_on_half_turn(two_j, -reduced).transpose();
  return parity * rotation_on_half_turn(two_j, reduced);
}

Eigen::MatrixXd wigner_d(double j, double beta) {
  const double two_j = 2.0 * j;
  if (!(two_j >= 0.0) || two_j != std::round(two_j)) {
    throw ArgumentError("wigner_d: j must be a non-negative half-integer");
  }
  return wigner_d(static_cast<int>(two_j), beta);
}

}  // namespace shg
