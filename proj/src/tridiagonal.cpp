#include "shg/tridiagonal.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "shg/errors.hpp"
#include "shg/parallel.hpp"
#include "shg/sturm.hpp"

namespace shg {

namespace {

constexpr int kLanes = 8;

void check_shapes(VectorRef diag, VectorRef offdiag) {
  if (diag.size() == 0 || offdiag.size() != diag.size() - 1) {
    throw ArgumentError("tridiagonal: need n >= 1 diagonal and n-1 off-diagonal entries");
  }
}

Eigen::VectorXd squared(VectorRef v) { return v.array().square().matrix(); }

// Counts at many shifts, lane-blocked; shifts.size() need not be a multiple
// of the lane width.
std::vector<int> counts_at(const Eigen::VectorXd& diag, const Eigen::VectorXd& offsq,
                           const std::vector<double>& shifts, int workers) {
  const int n = static_cast<int>(diag.size());
  const std::size_t batches = (shifts.size() + kLanes - 1) / kLanes;
  std::vector<int> counts(shifts.size());
  parallel_for(batches, workers, [&](std::size_t b) {
    double lam[kLanes];
    int cnt[kLanes];
    const std::size_t base = b * kLanes;
    for (int l = 0; l < kLanes; ++l) {
      lam[l] = base + l < shifts.size() ? shifts[base + l] : shifts.back();
    }
    sturm_count_lanes<double, kLanes>(diag.data(), offsq.data(), n, lam, cnt);
    for (int l = 0; l < kLanes && base + l < shifts.size(); ++l) counts[base + l] = cnt[l];
  });
  return counts;
}

}  // namespace

std::pair<double, double> gershgorin_bounds(VectorRef diag, VectorRef offdiag) {
  check_shapes(diag, offdiag);
  const Eigen::Index n = diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index f = 0; f < n; ++f) {
    double r = 0.0;
    if (f > 0) r += std::abs(offdiag(f - 1));
    if (f + 1 < n) r += std::abs(offdiag(f));
    lo = std::min(lo, diag(f) - r);
    hi = std::max(hi, diag(f) + r);
  }
  return {lo, hi};
}

int sturm_count(VectorRef diag, VectorRef offdiag, double lambda) {
  check_shapes(diag, offdiag);
  const Eigen::VectorXd d = diag;
  const Eigen::VectorXd c = squared(offdiag);
  return sturm_count<double>(d.data(), c.data(), static_cast<int>(d.size()), lambda);
}

Eigen::VectorXd bisect_eigenvalues(VectorRef diag_in, VectorRef offdiag, const BisectionOptions& options) {
  check_shapes(diag_in, offdiag);
  const Eigen::VectorXd diag = diag_in;
  const int n = static_cast<int>(diag.size());
  if (n == 1) return diag;
  if (!diag.allFinite() || !offdiag.allFinite()) {
    throw ConvergenceError("bisect_eigenvalues: non-finite matrix entries");
  }
  const Eigen::VectorXd offsq = squared(offdiag);

  auto [lo, hi] = gershgorin_bounds(diag, offdiag);
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(lo), std::abs(hi), 1.0});
  lo -= pad;
  hi += pad;
  const double spread = hi - lo;
  const double tol = options.rel_tol * std::max(1.0, spread);

  // Coarse uniform grid brackets every eigenvalue before per-index bisection.
  const int cells = 4 * n;
  std::vector<double> grid(cells + 1);
  for (int i = 0; i <= cells; ++i) grid[i] = lo + spread * (static_cast<double>(i) / cells);
  grid[cells] = hi;
  std::vector<int> grid_count = counts_at(diag, offsq, grid, options.workers);
  if (grid_count.front() != 0 || grid_count.back() != n) {
    throw ConvergenceError("bisect_eigenvalues: Gershgorin interval holds " +
                           std::to_string(grid_count.back() - grid_count.front()) + " of " +
                           std::to_string(n) + " eigenvalues");
  }

  std::vector<double> left(n), right(n);
  for (int v = 0, i = 0; v < n; ++v) {
    while (grid_count[i + 1] <= v) ++i;
    left[v] = grid[i];
    right[v] = grid[i + 1];
  }

  const double width = spread / cells;
  const int iterations =
      width > tol ? std::min(200, static_cast<int>(std::ceil(std::log2(width / tol)))) : 0;

  const std::size_t batches = (static_cast<std::size_t>(n) + kLanes - 1) / kLanes;
  parallel_for(batches, options.workers, [&](std::size_t b) {
    const int base = static_cast<int>(b) * kLanes;
    const int lanes = std::min(kLanes, n - base);
    double mid[kLanes];
    int cnt[kLanes];
    for (int it = 0; it < iterations; ++it) {
      for (int l = 0; l < kLanes; ++l) {
        const int v = base + std::min(l, lanes - 1);
        mid[l] = left[v] + 0.5 * (right[v] - left[v]);
      }
      sturm_count_lanes<double, kLanes>(diag.data(), offsq.data(), n, mid, cnt);
      for (int l = 0; l < lanes; ++l) {
        const int v = base + l;
        (cnt[l] > v ? right[v] : left[v]) = mid[l];
      }
    }
  });

  Eigen::VectorXd values(n);
  for (int v = 0; v < n; ++v) {
    values(v) = left[v] + 0.5 * (right[v] - left[v]);
    if (!std::isfinite(values(v)) || (v > 0 && values(v) < values(v - 1))) {
      throw ConvergenceError("bisect_eigenvalues: bracket for level " + std::to_string(v) +
                             " lost its root");
    }
  }
  return values;
}

double residual_inf(VectorRef diag, VectorRef offdiag, double lambda, VectorRef x) {
  check_shapes(diag, offdiag);
  const Eigen::Index n = diag.size();
  double worst = 0.0;
  for (Eigen::Index f = 0; f < n; ++f) {
    double r = (diag(f) - lambda) * x(f);
    if (f > 0) r += offdiag(f - 1) * x(f - 1);
    if (f + 1 < n) r += offdiag(f) * x(f + 1);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

Eigen::VectorXd inverse_iteration(VectorRef diag, VectorRef offdiag, double lambda, int iterations) {
  check_shapes(diag, offdiag);
  const Eigen::Index n = diag.size();
  if (n == 1) return Eigen::VectorXd::Ones(1);

  // LU of T - lambda with partial pivoting; U has two super-diagonals.
  Eigen::VectorXd u0 = diag.array() - lambda;
  Eigen::VectorXd u1 = offdiag;
  Eigen::VectorXd u2 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd mult(n - 1);
  std::vector<bool> swapped(n - 1, false);
  const double norm = std::max(diag.cwiseAbs().maxCoeff() + 2.0 * offdiag.cwiseAbs().maxCoeff(), 1.0);
  const double tiny = norm * std::numeric_limits<double>::epsilon();

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double sub = offdiag(i);
    if (std::abs(u0(i)) >= std::abs(sub)) {
      if (u0(i) == 0.0) u0(i) = tiny;
      mult(i) = sub / u0(i);
      u0(i + 1) -= mult(i) * u1(i);
    } else {
      swapped[i] = true;
      mult(i) = u0(i) / sub;
      const double row_i1 = u1(i);
      u0(i) = sub;
      u1(i) = u0(i + 1);
      u0(i + 1) = row_i1 - mult(i) * u1(i);
      if (i + 1 < n - 1) {
        u2(i) = offdiag(i + 1);
        u1(i + 1) = -mult(i) * u2(i);
      }
    }
  }
  if (u0(n - 1) == 0.0) u0(n - 1) = tiny;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(u0(i)) < tiny) u0(i) = std::copysign(tiny, u0(i));
  }

  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < iterations; ++it) {
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x(i), x(i + 1));
      x(i + 1) -= mult(i) * x(i);
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      double r = x(i);
      if (i + 1 < n) r -= u1(i) * x(i + 1);
      if (i + 2 < n) r -= u2(i) * x(i + 2);
      x(i) = r / u0(i);
    }
    const double scale = x.cwiseAbs().maxCoeff();
    x /= scale;
    x.normalize();
  }
  return x;
}

void fix_eigenvector_sign(VectorRef diag, VectorRef offdiag, double lambda, Eigen::Ref<Eigen::VectorXd> x) {
  check_shapes(diag, offdiag);
  Eigen::Index peak = 0;
  x.cwiseAbs().maxCoeff(&peak);
  int expected = 1;  // sign of P_peak(lambda); P_0 = 1
  if (peak > 0) {
    if (offdiag.head(peak).minCoeff() > 0.0) {
      const Eigen::VectorXd d = diag.head(peak);
      const Eigen::VectorXd c = squared(offdiag.head(peak));
      expected = sturm_sequence<double>(d.data(), c.data(), static_cast<int>(peak), lambda).back().sign();
    } else {
      expected = 0;
    }
  }
  const bool flip = expected != 0 ? (x(peak) > 0) != (expected > 0) : x(0) < 0;
  if (flip) x = -x;
}

TridiagonalEigen tridiagonal_eigen_oracle(VectorRef diag, VectorRef offdiag, bool with_vectors) {
  check_shapes(diag, offdiag);
  const Eigen::Index n = diag.size();
  TridiagonalEigen out;
  if (n == 1) {
    out.values = diag;
    if (with_vectors) out.vectors = Eigen::MatrixXd::Ones(1, 1);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag,
                                with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("tridiagonal_eigen_oracle: QR iteration did not converge");
  }
  out.values = solver.eigenvalues();
  if (with_vectors) {
    out.vectors = solver.eigenvectors();
    for (Eigen::Index v = 0; v < n; ++v) {
      fix_eigenvector_sign(diag, offdiag, out.values(v), out.vectors.col(v));
    }
  }
  return out;
}

}  // namespace shg
