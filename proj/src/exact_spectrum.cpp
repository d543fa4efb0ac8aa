#include "shg/exact_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "shg/errors.hpp"

namespace shg {

namespace {

// log N(f;k,s) = 1/2 [log k! + log (s-f)! - log (k+2f)! - log s!], i.e. minus
// half the log of prod_{i<f} psi(l0 + i + 1; l1).
double log_norm_factor(const Block& block, int f) {
  const int k = block.k(), s = block.s();
  return 0.5 * (std::lgamma(k + 1.0) + std::lgamma(s - f + 1.0) - std::lgamma(k + 2.0 * f + 1.0) -
                std::lgamma(s + 1.0));
}

// Forward reconstruction from the polynomial sequence; no acceptance test.
Eigen::VectorXd reconstruct(const Block& block, const ModelParams& params, double lambda) {
  const auto seq = sturm_polynomials(block, params, lambda).values;
  const int n = block.dim();
  const double log_g = std::log(params.g_abs);
  Eigen::VectorXd logs(n);
  Eigen::VectorXd signs(n);
  for (int f = 0; f < n; ++f) {
    const auto& p = seq[f];
    signs(f) = p.sign();
    logs(f) = p.sign() == 0 ? -std::numeric_limits<double>::infinity()
                            : log_norm_factor(block, f) + p.log_abs() - f * log_g;
  }
  const double top = logs.maxCoeff();
  Eigen::VectorXd q(n);
  for (int f = 0; f < n; ++f) q(f) = signs(f) * std::exp(logs(f) - top);
  q.normalize();
  return q;
}

Eigen::VectorXd diagonal_order(const Eigen::VectorXd& diag) {
  Eigen::VectorXd sorted = diag;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  return sorted;
}

// g_abs = 0: T is diagonal. Eigenvectors are unit vectors, ordered by value.
SpectralSolution solve_uncoupled(const TridiagonalOperator& op, SolveMethod method) {
  const Eigen::Index n = op.diag.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return op.diag(a) < op.diag(b); });
  SpectralSolution out{op.block, Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, n), method};
  for (Eigen::Index v = 0; v < n; ++v) {
    out.lambdas(v) = op.diag(order[v]);
    out.Q(order[v], v) = 1.0;
  }
  return out;
}

}  // namespace

std::string_view to_string(SolveMethod method) {
  return method == SolveMethod::sturm ? "sturm" : "oracle";
}

SolveMethod parse_solve_method(std::string_view name) {
  if (name == "sturm") return SolveMethod::sturm;
  if (name == "oracle") return SolveMethod::oracle;
  throw ArgumentError("unknown solve method '" + std::string(name) + "'");
}

double amplitude_tolerance(const TridiagonalOperator& op) {
  const double norm = op.diag.cwiseAbs().maxCoeff() +
                      (op.offdiag.size() ? 2.0 * op.offdiag.maxCoeff() : 0.0);
  return 1e-10 * std::max(1.0, norm);
}

SturmEvaluation sturm_polynomials(const Block& block, const ModelParams& params, double lambda) {
  if (!std::isfinite(lambda)) throw ArgumentError("sturm_polynomials: lambda must be finite");
  const auto op = hamiltonian_matrix(block, params);
  const Eigen::VectorXd offsq = op.offdiag.array().square();
  SturmEvaluation out;
  out.values = sturm_sequence<double>(op.diag.data(), offsq.data(), block.dim(), lambda, &out.below);
  return out;
}

Eigen::VectorXd eigenvalues_sturm(const Block& block, const ModelParams& params,
                                  const BisectionOptions& options) {
  const auto op = hamiltonian_matrix(block, params);
  if (params.g_abs == 0.0) return diagonal_order(op.diag);
  return bisect_eigenvalues(op.diag, op.offdiag, options);
}

Eigen::VectorXd amplitudes_from_lambda(const Block& block, const ModelParams& params, double lambda) {
  if (block.s() == 0) return Eigen::VectorXd::Ones(1);
  if (params.g_abs == 0.0) {
    throw ArgumentError("amplitudes_from_lambda: the recurrence needs g_abs > 0");
  }
  const auto op = hamiltonian_matrix(block, params);
  Eigen::VectorXd q = reconstruct(block, params, lambda);
  const double res = residual_inf(op.diag, op.offdiag, lambda, q);
  if (!(res <= amplitude_tolerance(op))) {
    throw ArgumentError("amplitudes_from_lambda: residual " + std::to_string(res) +
                        " at lambda=" + std::to_string(lambda) + " exceeds tolerance");
  }
  return q;
}

SpectralSolution solve(const Block& block, const ModelParams& params, SolveMethod method,
                       const BisectionOptions& options) {
  const auto op = hamiltonian_matrix(block, params);
  const int n = block.dim();
  if (n == 1) {
    return {block, op.diag, Eigen::MatrixXd::Ones(1, 1), method};
  }
  if (params.g_abs == 0.0) return solve_uncoupled(op, method);

  if (method == SolveMethod::oracle) {
    auto eig = tridiagonal_eigen_oracle(op.diag, op.offdiag, true);
    return {block, std::move(eig.values), std::move(eig.vectors), method};
  }

  SpectralSolution out{block, bisect_eigenvalues(op.diag, op.offdiag, options), Eigen::MatrixXd(n, n),
                       method};
  const double tol = amplitude_tolerance(op);
  // The recurrence is kept only when it is as good as inverse iteration would be;
  // near-acceptable vectors still cost orthogonality across levels.
  const double strict = 1e-2 * tol;
  for (int v = 0; v < n; ++v) {
    const double lambda = out.lambdas(v);
    Eigen::VectorXd q = reconstruct(block, params, lambda);
    if (!(residual_inf(op.diag, op.offdiag, lambda, q) <= strict)) {
      q = inverse_iteration(op.diag, op.offdiag, lambda);
      fix_eigenvector_sign(op.diag, op.offdiag, lambda, q);
      if (!(residual_inf(op.diag, op.offdiag, lambda, q) <= tol)) {
        throw ConvergenceError("solve: no accurate eigenvector for level " + std::to_string(v) +
                               " of block (k=" + std::to_string(block.k()) +
                               ", s=" + std::to_string(block.s()) + ")");
      }
    }
    out.Q.col(v) = q;
  }
  return out;
}

}  // namespace shg
