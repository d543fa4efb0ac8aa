#pragma once

// Exact per-block spectrum: eigenvalues from the roots of the boundary
// polynomial P_{s+1}(lambda) (scaled Sturm bisection), amplitudes from the
// same polynomial sequence, and an independent QR reference solver.

#include <Eigen/Core>

#include <string_view>
#include <vector>

#include "shg/model.hpp"
#include "shg/sturm.hpp"
#include "shg/tridiagonal.hpp"

namespace shg {

enum class SolveMethod { sturm, oracle };

std::string_view to_string(SolveMethod method);
SolveMethod parse_solve_method(std::string_view name);

struct SpectralSolution {
  Block block;
  Eigen::VectorXd lambdas;  // ascending; v is the rank
  Eigen::MatrixXd Q;        // Q(f, v), columns orthonormal, Q(0, v) > 0
  SolveMethod method;
};

struct SturmEvaluation {
  std::vector<ScaledValue<double>> values;  // P_0 .. P_{s+1}
  int below = 0;                            // eigenvalues strictly below lambda
};

SturmEvaluation sturm_polynomials(const Block& block, const ModelParams& params, double lambda);

Eigen::VectorXd eigenvalues_sturm(const Block& block, const ModelParams& params,
                                  const BisectionOptions& options = {});

// Q_f = P_f(lambda) Q_0 / (|g|^f prod_{i<f} sqrt(psi(i+1))), normalized with Q_0 > 0. Throws
// ArgumentError when the result is not an eigenvector to working accuracy,
// which covers both non-eigenvalue input and a forward recurrence that lost
// too many digits.
Eigen::VectorXd amplitudes_from_lambda(const Block& block, const ModelParams& params, double lambda);

SpectralSolution solve(const Block& block, const ModelParams& params,
                       SolveMethod method = SolveMethod::sturm,
                       const BisectionOptions& options = {});

// Residual threshold used to accept an amplitude vector: 1e-10 * max(1, |T|).
double amplitude_tolerance(const TridiagonalOperator& op);

}  // namespace shg
