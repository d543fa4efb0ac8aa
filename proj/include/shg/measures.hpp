#pragma once

// Accuracy measures between an exact spectrum and an approximation, paired
// by rank v. All quantities are plain fractions (not percent).

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "shg/exact_spectrum.hpp"
#include "shg/quasiclassical.hpp"

namespace shg {

// [sum lambda^2 - sum approx^2] / sum lambda^2
double delta2_H(VectorRef exact, VectorRef approx);

// sum (lambda - approx)^2 / sum lambda^2, over all v or over v >= ceil(s/2).
double delta2_E(VectorRef exact, VectorRef approx, bool upper_only = false);

struct EnergyErrors {
  Eigen::VectorXd absolute;                   // lambda_v - approx_v
  std::vector<std::optional<double>> relative;  // absolute / lambda_v, empty where lambda_v == 0
};

EnergyErrors energy_errors(VectorRef exact, VectorRef approx);

struct Overlap {
  double cosine = 0.0;   // sum_f S_f Q_f
  double deficit = 0.0;  // 1 - cosine^2
};

// Both columns must be unit vectors to 1e-8.
Overlap overlap_deficit(VectorRef s_column, VectorRef q_column);

struct MeasureReport {
  Block block;
  AngleStrategy strategy;
  double delta2_H = 0.0;
  double delta2_E = 0.0;
  double delta2_E_up = 0.0;
  EnergyErrors errors;
  std::vector<double> overlap_deficits;  // empty when the strategy has no vectors
};

// Uses lambda^qc when use_qc is set (requires approx.lambdas_qc), lambda^cmf otherwise.
MeasureReport measure_report(const SpectralSolution& exact, const QCApproximation& approx,
                             bool use_qc = false);

}  // namespace shg
