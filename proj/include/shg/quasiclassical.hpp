#pragma once

// SU(2)-quasiclassical approximation of a block: eigenvectors are columns of
// the Wigner d-matrix d^j(2r) with j = s/2, and eigenvalues come either from
// the full expectation value (lambda_qc) or from its cluster mean-field
// closed form (lambda_cmf).

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shg/model.hpp"

namespace shg {

enum class AngleTag { r1, mp_r1, r2, r3, explicit_angle };

// Fitting-angle strategy, stored as the cos(2r) table per level. sin(2r) is
// always the non-negative root.
//   r1      cos 2r = +1/3
//   mp_r1   cos 2r = -1/3 for v < ceil((s+1)/2), +1/3 above
//   r2      cos 2r = -1/sqrt(s)   (-1 at s = 0, where it has no effect)
//   r3      cos 2r = 0
//   explicit_angle  caller-supplied cos 2r in [-1, 1]
class AngleStrategy {
 public:
  static AngleStrategy r1() { return AngleStrategy(AngleTag::r1); }
  static AngleStrategy mp_r1() { return AngleStrategy(AngleTag::mp_r1); }
  static AngleStrategy r2() { return AngleStrategy(AngleTag::r2); }
  static AngleStrategy r3() { return AngleStrategy(AngleTag::r3); }
  static AngleStrategy explicit_cos2r(double cos2r);

  AngleTag tag() const { return tag_; }
  bool single_angle() const { return tag_ != AngleTag::mp_r1; }
  double cos2r(const Block& block, int v) const;
  // Only for single-angle strategies.
  double cos2r(const Block& block) const;
  std::string name() const;

 private:
  explicit AngleStrategy(AngleTag tag, double cos2r = 0.0) : tag_(tag), explicit_cos2r_(cos2r) {}
  AngleTag tag_;
  double explicit_cos2r_;
};

// "r1", "mp_r1", "r2", "r3" or "cos:<value>".
AngleStrategy parse_angle_strategy(std::string_view text);

// S(f, v) = d^j_{-j+f, -j+v}(2r), real gauge.
Eigen::MatrixXd qc_eigvectors(const Block& block, const AngleStrategy& strategy);

// S with the gauge factor (g/|g|)^{f-v} attached.
Eigen::MatrixXcd qc_eigvectors_original_gauge(const Block& block, const ModelParams& params,
                                              const AngleStrategy& strategy);

// lambda^cmf_v = Delta [j + l0 - (j - v) c_v]
//              - 2 |g| (j - v) sqrt(1 - c_v^2) sqrt(2 [s + 2k + 1 + (2v - s) c_v])
// with c_v = cos 2r_v. A negative radicand is clamped to zero and the level
// index is appended to *clamped when given.
Eigen::VectorXd lambda_cmf(const Block& block, const ModelParams& params, const AngleStrategy& strategy,
                           std::vector<int>* clamped = nullptr);

// lambda^qc_v = Delta [j + l0 - (j - v) cos 2r]
//             + 2 |g| sum_{f<s} sqrt((s-f)(f+1) 2 (2k+1+2f)) S(f,v) S(f+1,v)
Eigen::VectorXd lambda_qc(const Block& block, const ModelParams& params, const Eigen::MatrixXd& S,
                          double cos2r);
Eigen::VectorXd lambda_qc(const Block& block, const ModelParams& params, const AngleStrategy& strategy);

struct QCApproximation {
  Block block;
  AngleStrategy strategy;
  Eigen::VectorXd lambdas_cmf;
  std::optional<Eigen::VectorXd> lambdas_qc;
  std::optional<Eigen::MatrixXd> S;
  std::vector<int> clamped_levels;
};

// Vectors and lambda_qc are filled only for single-angle strategies when
// with_vectors is set.
QCApproximation approximate(const Block& block, const ModelParams& params, const AngleStrategy& strategy,
                            bool with_vectors = true);

}  // namespace shg
