#pragma once

// Eigen-style free functions on real symmetric tridiagonal matrices given as
// (diagonal, off-diagonal) vector pairs.

#include <Eigen/Core>

#include <utility>

namespace shg {

using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

struct BisectionOptions {
  double rel_tol = 1e-13;
  int workers = 1;
};

// [min_f(d_f - b_{f-1} - b_f), max_f(d_f + b_{f-1} + b_f)]
std::pair<double, double> gershgorin_bounds(VectorRef diag, VectorRef offdiag);

// Number of eigenvalues strictly below lambda.
int sturm_count(VectorRef diag, VectorRef offdiag, double lambda);

// All eigenvalues in ascending order by Sturm-count bisection.
Eigen::VectorXd bisect_eigenvalues(VectorRef diag, VectorRef offdiag,
                                   const BisectionOptions& options = {});

// ||T x - lambda x||_inf
double residual_inf(VectorRef diag, VectorRef offdiag, double lambda, VectorRef x);

// Unit eigenvector for a converged eigenvalue by shifted inverse iteration.
Eigen::VectorXd inverse_iteration(VectorRef diag, VectorRef offdiag, double lambda,
                                  int iterations = 3);

// Flips x so that its first component is positive. For an unreduced matrix
// with positive couplings sign(x_f) = sign(x_0) sign(P_f(lambda)); the test is
// made at the largest |x_f|, where that relation is well conditioned even when
// x_0 itself is far below rounding level.
void fix_eigenvector_sign(VectorRef diag, VectorRef offdiag, double lambda,
                          Eigen::Ref<Eigen::VectorXd> x);

struct TridiagonalEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, empty when not requested
};

// Reference solver: implicit symmetric QR as implemented by Eigen.
TridiagonalEigen tridiagonal_eigen_oracle(VectorRef diag, VectorRef offdiag,
                                          bool with_vectors = true);

}  // namespace shg
