#include "shg/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shg/errors.hpp"

namespace shg {

namespace {

void check_pair(VectorRef exact, VectorRef approx, const char* who) {
  if (exact.size() != approx.size() || exact.size() == 0) {
    throw ArgumentError(std::string(who) + ": spectra must be non-empty and of equal length");
  }
}

double checked_ratio(double num, double den, const char* who) {
  if (!(den > 0.0)) throw UndefinedMeasureError(std::string(who) + ": exact spectrum is identically zero");
  return num / den;
}

}  // namespace

double delta2_H(VectorRef exact, VectorRef approx) {
  check_pair(exact, approx, "delta2_H");
  const double den = exact.squaredNorm();
  return checked_ratio(den - approx.squaredNorm(), den, "delta2_H");
}

double delta2_E(VectorRef exact, VectorRef approx, bool upper_only) {
  check_pair(exact, approx, "delta2_E");
  const Eigen::Index n = exact.size();
  const Eigen::Index first = upper_only ? n / 2 : 0;  // ceil(s/2) with s = n - 1
  const auto e = exact.tail(n - first);
  const auto a = approx.tail(n - first);
  return checked_ratio((e - a).squaredNorm(), e.squaredNorm(), "delta2_E");
}

EnergyErrors energy_errors(VectorRef exact, VectorRef approx) {
  check_pair(exact, approx, "energy_errors");
  EnergyErrors out{exact - approx, {}};
  out.relative.reserve(exact.size());
  for (Eigen::Index v = 0; v < exact.size(); ++v) {
    if (exact(v) == 0.0) {
      out.relative.emplace_back(std::nullopt);
    } else {
      out.relative.emplace_back(out.absolute(v) / exact(v));
    }
  }
  return out;
}

Overlap overlap_deficit(VectorRef s_column, VectorRef q_column) {
  if (s_column.size() != q_column.size()) throw ArgumentError("overlap_deficit: length mismatch");
  if (std::abs(s_column.norm() - 1.0) > 1e-8 || std::abs(q_column.norm() - 1.0) > 1e-8) {
    throw ArgumentError("overlap_deficit: columns must be unit vectors");
  }
  const double c = s_column.dot(q_column);
  return {c, std::clamp(1.0 - c * c, 0.0, 1.0)};
}

MeasureReport measure_report(const SpectralSolution& exact, const QCApproximation& approx, bool use_qc) {
  if (!(exact.block == approx.block)) throw ArgumentError("measure_report: blocks differ");
  if (use_qc && !approx.lambdas_qc) throw ArgumentError("measure_report: lambda_qc not available");
  const Eigen::VectorXd& lam = use_qc ? *approx.lambdas_qc : approx.lambdas_cmf;
  MeasureReport out{exact.block, approx.strategy, 0.0, 0.0, 0.0, energy_errors(exact.lambdas, lam), {}};
  out.delta2_H = delta2_H(exact.lambdas, lam);
  out.delta2_E = delta2_E(exact.lambdas, lam, false);
  out.delta2_E_up = delta2_E(exact.lambdas, lam, true);
  if (approx.S) {
    for (Eigen::Index v = 0; v < exact.Q.cols(); ++v) {
      out.overlap_deficits.push_back(overlap_deficit(approx.S->col(v), exact.Q.col(v)).deficit);
    }
  }
  return out;
}

}  // namespace shg
