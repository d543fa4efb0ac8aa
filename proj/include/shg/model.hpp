#pragma once

// Model parameters and the (k,s) block structure of the second-harmonic
// generation Hamiltonian H = w0 N0 + w1 N1 + g a1^+2 a0 + g* a1^2 a0^+.
//
// Each invariant block L(k,s) is spanned by the Fock states
// |n1 = k + 2f, n0 = s - f>, f = 0..s, and H restricted to it is a real
// symmetric tridiagonal matrix once the phase of g is gauged away.

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <utility>

namespace shg {

struct ModelParams {
  double omega0 = 2.0;
  double omega1 = 1.0;
  double g_abs = 1.0;
  double g_phase = 0.0;

  ModelParams() = default;
  ModelParams(double omega0, double omega1, double g_abs, double g_phase = 0.0);

  // omega0 = 2, omega1 = 1: delta is exactly zero.
  static ModelParams resonant(double g_abs, double g_phase = 0.0);
  // omega0 = 0, omega1 = delta/2.
  static ModelParams detuned(double delta, double g_abs, double g_phase = 0.0);

  double delta() const { return 2.0 * omega1 - omega0; }

  // Additive constant C(l1) = (omega1 + omega0) l1 dropped from every lambda.
  double energy_offset(double l1) const { return (omega1 + omega0) * l1; }
};

// A value n/3; l0 and l1 are always thirds of integers.
struct Thirds {
  std::int64_t numerator = 0;
  double value() const { return static_cast<double>(numerator) / 3.0; }
  friend bool operator==(Thirds, Thirds) = default;
};

class Block {
 public:
  Block(int k, int s);

  int k() const { return k_; }
  int s() const { return s_; }
  int dim() const { return s_ + 1; }
  double j() const { return 0.5 * s_; }

  Thirds l0() const { return {k_ - s_}; }
  Thirds l1() const { return {k_ + 2 * static_cast<std::int64_t>(s_)}; }

  // Fock occupations of basis index f.
  int n1(int f) const { return k_ + 2 * f; }
  int n0(int f) const { return s_ - f; }

  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block& a, const Block& b) {
    if (auto c = a.s_ <=> b.s_; c != 0) return c;
    return a.k_ <=> b.k_;
  }

 private:
  int k_;
  int s_;
};

// Symmetric tridiagonal matrix of H - C(l1) on one block, real gauge.
struct TridiagonalOperator {
  Block block;
  Eigen::VectorXd diag;     // length s+1
  Eigen::VectorXd offdiag;  // length s, entries >= 0

  Eigen::MatrixXd dense() const;
};

// psi(l0 + f; l1) = (k+2f)(k+2f-1)(s-f+1), for 0 <= f <= s+1.
std::int64_t structure_poly(const Block& block, int f);

// <f+1|H|f> in the real gauge: g_abs * sqrt(psi(l0 + f + 1; l1)), 0 <= f < s.
double coupling(const Block& block, const ModelParams& params, int f);

TridiagonalOperator hamiltonian_matrix(const Block& block, const ModelParams& params);

// (n1, n0) -> block containing that Fock state and its basis index f.
std::pair<Block, int> fock_to_block(int n1, int n0);

}  // namespace shg
