#include "shg/quasiclassical.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "shg/errors.hpp"
#include "shg/wigner.hpp"

namespace shg {

AngleStrategy AngleStrategy::explicit_cos2r(double cos2r) {
  if (!(cos2r >= -1.0 && cos2r <= 1.0)) {
    throw ArgumentError("AngleStrategy: explicit cos2r must lie in [-1, 1]");
  }
  return AngleStrategy(AngleTag::explicit_angle, cos2r);
}

double AngleStrategy::cos2r(const Block& block, int v) const {
  const int s = block.s();
  switch (tag_) {
    case AngleTag::r1:
      return 1.0 / 3.0;
    case AngleTag::mp_r1:
      return v < (s + 2) / 2 ? -1.0 / 3.0 : 1.0 / 3.0;
    case AngleTag::r2:
      return s == 0 ? -1.0 : -1.0 / std::sqrt(static_cast<double>(s));
    case AngleTag::r3:
      return 0.0;
    case AngleTag::explicit_angle:
      return explicit_cos2r_;
  }
  return 0.0;
}

double AngleStrategy::cos2r(const Block& block) const {
  if (!single_angle()) {
    throw ArgumentError("AngleStrategy: " + name() + " uses two angles");
  }
  return cos2r(block, 0);
}

std::string AngleStrategy::name() const {
  switch (tag_) {
    case AngleTag::r1: return "r1";
    case AngleTag::mp_r1: return "mp_r1";
    case AngleTag::r2: return "r2";
    case AngleTag::r3: return "r3";
    case AngleTag::explicit_angle: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, explicit_cos2r_);
      return "cos:" + std::string(buf, res.ptr);
    }
  }
  return {};
}

AngleStrategy parse_angle_strategy(std::string_view text) {
  if (text == "r1") return AngleStrategy::r1();
  if (text == "mp_r1") return AngleStrategy::mp_r1();
  if (text == "r2") return AngleStrategy::r2();
  if (text == "r3") return AngleStrategy::r3();
  if (text.starts_with("cos:")) {
    const auto body = text.substr(4);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec == std::errc() && ptr == body.data() + body.size()) return AngleStrategy::explicit_cos2r(value);
  }
  throw ArgumentError("unknown angle strategy '" + std::string(text) + "'");
}

Eigen::MatrixXd qc_eigvectors(const Block& block, const AngleStrategy& strategy) {
  if (!strategy.single_angle()) {
    throw ArgumentError("qc_eigvectors: mp_r1 mixes two angles and has no orthonormal vector set");
  }
  const double two_r = std::acos(strategy.cos2r(block));
  return wigner_d(block.s(), two_r);
}

Eigen::MatrixXcd qc_eigvectors_original_gauge(const Block& block, const ModelParams& params,
                                              const AngleStrategy& strategy) {
  const Eigen::MatrixXd S = qc_eigvectors(block, strategy);
  Eigen::MatrixXcd out(S.rows(), S.cols());
  for (Eigen::Index v = 0; v < S.cols(); ++v) {
    for (Eigen::Index f = 0; f < S.rows(); ++f) {
      out(f, v) = std::polar(S(f, v), params.g_phase * static_cast<double>(f - v));
    }
  }
  return out;
}

Eigen::VectorXd lambda_cmf(const Block& block, const ModelParams& params, const AngleStrategy& strategy,
                           std::vector<int>* clamped) {
  const int s = block.s(), k = block.k();
  const double j = block.j();
  const double l0 = block.l0().value();
  Eigen::VectorXd out(s + 1);
  for (int v = 0; v <= s; ++v) {
    const double c = strategy.cos2r(block, v);
    const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
    double radicand = 2.0 * (s + 2.0 * k + 1.0 + (2.0 * v - s) * c);
    if (radicand < 0.0) {
      if (clamped) clamped->push_back(v);
      radicand = 0.0;
    }
    out(v) = params.delta() * (j + l0 - (j - v) * c) -
             2.0 * params.g_abs * (j - v) * sn * std::sqrt(radicand);
  }
  return out;
}

Eigen::VectorXd lambda_qc(const Block& block, const ModelParams& params, const Eigen::MatrixXd& S,
                          double cos2r) {
  const int s = block.s(), k = block.k();
  if (S.rows() != s + 1 || S.cols() != s + 1) {
    throw ArgumentError("lambda_qc: S must be (s+1) x (s+1)");
  }
  const double j = block.j();
  const double l0 = block.l0().value();
  Eigen::VectorXd weights(s);
  for (int f = 0; f < s; ++f) {
    weights(f) = std::sqrt(static_cast<double>(s - f) * (f + 1) * 2.0 * (2.0 * k + 1.0 + 2.0 * f));
  }
  Eigen::VectorXd out(s + 1);
  for (int v = 0; v <= s; ++v) {
    double sum = 0.0;
    for (int f = 0; f < s; ++f) sum += weights(f) * S(f, v) * S(f + 1, v);
    out(v) = params.delta() * (j + l0 - (j - v) * cos2r) + 2.0 * params.g_abs * sum;
  }
  return out;
}

Eigen::VectorXd lambda_qc(const Block& block, const ModelParams& params, const AngleStrategy& strategy) {
  return lambda_qc(block, params, qc_eigvectors(block, strategy), strategy.cos2r(block));
}

QCApproximation approximate(const Block& block, const ModelParams& params, const AngleStrategy& strategy,
                            bool with_vectors) {
  QCApproximation out{block, strategy, {}, std::nullopt, std::nullopt, {}};
  out.lambdas_cmf = lambda_cmf(block, params, strategy, &out.clamped_levels);
  if (with_vectors && strategy.single_angle()) {
    out.S = qc_eigvectors(block, strategy);
    out.lambdas_qc = lambda_qc(block, params, *out.S, strategy.cos2r(block));
  }
  return out;
}

}  // namespace shg
