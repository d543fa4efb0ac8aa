#include "shg/model.hpp"

#include <cmath>
#include <string>

#include "shg/errors.hpp"

namespace shg {

ModelParams::ModelParams(double omega0_, double omega1_, double g_abs_, double g_phase_)
    : omega0(omega0_), omega1(omega1_), g_abs(g_abs_), g_phase(g_phase_) {
  if (!std::isfinite(omega0) || !std::isfinite(omega1) || !std::isfinite(g_phase)) {
    throw ArgumentError("ModelParams: frequencies and phase must be finite");
  }
  if (!std::isfinite(g_abs) || g_abs < 0.0) {
    throw ArgumentError("ModelParams: g_abs must be finite and >= 0");
  }
}

ModelParams ModelParams::resonant(double g_abs, double g_phase) {
  return ModelParams(2.0, 1.0, g_abs, g_phase);
}

ModelParams ModelParams::detuned(double delta, double g_abs, double g_phase) {
  return ModelParams(0.0, 0.5 * delta, g_abs, g_phase);
}

Block::Block(int k, int s) : k_(k), s_(s) {
  if (k != 0 && k != 1) {
    throw ArgumentError("Block: k must be 0 or 1, got " + std::to_string(k));
  }
  if (s < 0) {
    throw ArgumentError("Block: s must be >= 0, got " + std::to_string(s));
  }
}

Eigen::MatrixXd TridiagonalOperator::dense() const {
  const Eigen::Index n = diag.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.diagonal() = diag;
  if (n > 1) {
    m.diagonal(1) = offdiag;
    m.diagonal(-1) = offdiag;
  }
  return m;
}

std::int64_t structure_poly(const Block& block, int f) {
  if (f < 0 || f > block.s() + 1) {
    throw ArgumentError("structure_poly: f=" + std::to_string(f) + " outside [0, s+1]");
  }
  const std::int64_t a = block.k() + 2 * static_cast<std::int64_t>(f);
  return a * (a - 1) * (static_cast<std::int64_t>(block.s()) - f + 1);
}

double coupling(const Block& block, const ModelParams& params, int f) {
  if (f < 0 || f >= block.s()) {
    throw ArgumentError("coupling: f=" + std::to_string(f) + " outside [0, s-1]");
  }
  return params.g_abs * std::sqrt(static_cast<double>(structure_poly(block, f + 1)));
}

TridiagonalOperator hamiltonian_matrix(const Block& block, const ModelParams& params) {
  const int s = block.s();
  TridiagonalOperator op{block, Eigen::VectorXd(s + 1), Eigen::VectorXd(s)};
  const std::int64_t l0_num = block.l0().numerator;
  for (int f = 0; f <= s; ++f) {
    op.diag(f) = params.delta() * (static_cast<double>(l0_num + 3 * static_cast<std::int64_t>(f)) / 3.0);
  }
  for (int f = 0; f < s; ++f) op.offdiag(f) = coupling(block, params, f);
  return op;
}

std::pair<Block, int> fock_to_block(int n1, int n0) {
  if (n1 < 0 || n0 < 0) {
    throw ArgumentError("fock_to_block: occupations must be non-negative");
  }
  const int k = n1 % 2;
  const int f = (n1 - k) / 2;
  return {Block(k, n0 + f), f};
}

}  // namespace shg
