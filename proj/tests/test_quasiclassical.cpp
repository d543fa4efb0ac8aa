#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "reference_s100.hpp"
#include "shg/errors.hpp"
#include "shg/quasiclassical.hpp"
#include "shg/wigner.hpp"

using namespace shg;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("d-matrix matches the matrix exponential of the rotation generator") {
  const double betas[] = {0.3, 1.0, pi / 2, 2.0, 3.0, pi - 1e-3, -0.7, -2.5, 4.0, 7.5, -9.1};
  for (int two_j = 0; two_j <= 20; ++two_j) {
    for (double beta : betas) {
      CAPTURE(two_j);
      CAPTURE(beta);
      const Eigen::MatrixXd d = wigner_d(two_j, beta);
      const Eigen::MatrixXd ref = oracle::wigner_d_expm(two_j, beta);
      CHECK(max_abs(d - ref) <= 1e-12);
    }
  }
}

TEST_CASE("d-matrix special angles") {
  CHECK(max_abs(wigner_d(7, 0.0) - Eigen::MatrixXd::Identity(8, 8)) == 0.0);
  const Eigen::MatrixXd d1 = wigner_d(1.0, pi);
  // rows and columns run m = -1, 0, 1
  CHECK(d1(2, 0) == 1.0);
  CHECK(d1(1, 1) == -1.0);
  CHECK(d1(0, 2) == 1.0);
  CHECK(max_abs(d1.cwiseAbs() - Eigen::MatrixXd::Identity(3, 3).rowwise().reverse()) == 0.0);
  for (int two_j : {1, 4, 9}) CHECK(max_abs(wigner_d(two_j, pi) - oracle::wigner_d_expm(two_j, pi)) <= 1e-12);
  CHECK_THROWS_AS(wigner_d(0.25, 1.0), ArgumentError);
  CHECK_THROWS_AS(wigner_d(-1, 1.0), ArgumentError);
}

TEST_CASE("d-matrix symmetries and sign convention at large j") {
  for (int two_j : {21, 50, 100}) {
    for (double beta : {0.4, 1.9, 2.8}) {
      const Eigen::MatrixXd d = wigner_d(two_j, beta);
      const auto n = d.rows();
      CHECK(max_abs(d.transpose() * d - Eigen::MatrixXd::Identity(n, n)) <= 1e-12);
      CHECK(max_abs(wigner_d(two_j, -beta) - d.transpose()) == 0.0);
      // d_{-j,n} = sqrt(C(2j, j+n)) cos^{j-n}(beta/2) sin^{j+n}(beta/2) > 0
      for (Eigen::Index c = 0; c < n; ++c) {
        const double log_mag = 0.5 * (std::lgamma(two_j + 1.0) - std::lgamma(c + 1.0) - std::lgamma(two_j - c + 1.0)) +
                               (two_j - c) * std::log(std::cos(beta / 2)) + c * std::log(std::sin(beta / 2));
        if (log_mag > std::log(1e-10)) CHECK(d(0, c) == doctest::Approx(std::exp(log_mag)).epsilon(1e-8));
      }
      // Column n is an eigenvector of cos(beta) J_z + sin(beta) J_x with eigenvalue n.
      const double j = 0.5 * two_j;
      Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        gen(r, r) = std::cos(beta) * (r - j);
        if (r + 1 < n) {
          const double m = r - j;
          gen(r, r + 1) = gen(r + 1, r) = 0.5 * std::sin(beta) * std::sqrt((j - m) * (j + m + 1));
        }
      }
      Eigen::MatrixXd expect = d;
      for (Eigen::Index c = 0; c < n; ++c) expect.col(c) *= (c - j);
      CHECK(max_abs(gen * d - expect) <= 1e-10 * (j + 1));
    }
  }
}

TEST_CASE("angle strategy table") {
  const Block b(0, 100);
  CHECK(AngleStrategy::r1().cos2r(b) == doctest::Approx(1.0 / 3));
  CHECK(AngleStrategy::r2().cos2r(b) == doctest::Approx(-0.1));
  CHECK(AngleStrategy::r2().cos2r(Block(0, 0)) == -1.0);
  CHECK(AngleStrategy::r3().cos2r(b) == 0.0);
  CHECK(AngleStrategy::mp_r1().cos2r(b, 0) == doctest::Approx(-1.0 / 3));
  CHECK(AngleStrategy::mp_r1().cos2r(b, 50) == doctest::Approx(-1.0 / 3));
  CHECK(AngleStrategy::mp_r1().cos2r(b, 51) == doctest::Approx(1.0 / 3));
  CHECK(AngleStrategy::mp_r1().cos2r(Block(0, 5), 2) == doctest::Approx(-1.0 / 3));
  CHECK(AngleStrategy::mp_r1().cos2r(Block(0, 5), 3) == doctest::Approx(1.0 / 3));
  CHECK(AngleStrategy::mp_r1().cos2r(b, 100) == doctest::Approx(1.0 / 3));
  CHECK_FALSE(AngleStrategy::mp_r1().single_angle());
  CHECK_THROWS_AS(AngleStrategy::mp_r1().cos2r(b), ArgumentError);
  CHECK_THROWS_AS(AngleStrategy::explicit_cos2r(1.5), ArgumentError);
  CHECK(parse_angle_strategy("r2").tag() == AngleTag::r2);
  CHECK(parse_angle_strategy("cos:0.25").cos2r(b) == 0.25);
  CHECK(parse_angle_strategy("cos:0.25").name() == "cos:0.25");
  CHECK_THROWS_AS(parse_angle_strategy("r4"), ArgumentError);
}

TEST_CASE("cmf levels reproduce the published s = 100 columns") {
  const Block b(0, 100);
  const auto p = ModelParams::resonant(1.0);
  const AngleStrategy strategies[] = {AngleStrategy::r1(), AngleStrategy::mp_r1(), AngleStrategy::r2(),
                                      AngleStrategy::r3()};
  for (int i = 0; i < 4; ++i) {
    const auto lam = lambda_cmf(b, p, strategies[i]);
    for (int r = 0; r < 11; ++r) {
      CAPTURE(i);
      CAPTURE(r);
      CHECK(std::abs(lam(10 * r) - reference::cmf[i][r]) <= 0.2);
    }
  }
}

TEST_CASE("full-sum levels equal the diagonal of the congruence") {
  for (int s : {1, 20, 100}) {
    for (int k = 0; k <= 1; ++k) {
      for (double delta : {0.0, 1.7}) {
        const Block b(k, s);
        const auto p = ModelParams::detuned(delta, 1.0);
        const Eigen::MatrixXd T = oracle::block_hamiltonian(k, s, delta, 1.0);
        for (auto st : {AngleStrategy::r1(), AngleStrategy::r2(), AngleStrategy::r3(),
                        AngleStrategy::explicit_cos2r(-0.6)}) {
          const Eigen::MatrixXd S = qc_eigvectors(b, st);
          CHECK(max_abs(S.transpose() * S - Eigen::MatrixXd::Identity(s + 1, s + 1)) <= 1e-10);
          const Eigen::VectorXd congruence = (S.transpose() * T * S).diagonal();
          const Eigen::VectorXd qc = lambda_qc(b, p, st);
          for (int v = 0; v <= s; ++v) {
            CHECK(std::abs(qc(v) - congruence(v)) <= 1e-8 * std::max(1.0, std::abs(congruence(v))));
          }
        }
      }
    }
  }
}

TEST_CASE("two-level block: full sum is exact, closed form is not") {
  const Block b(0, 1);
  const auto p = ModelParams::resonant(1.0);
  const auto qc = lambda_qc(b, p, AngleStrategy::r3());
  CHECK(qc(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(qc(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const auto cmf = lambda_cmf(b, p, AngleStrategy::r3());
  CHECK(cmf(0) == doctest::Approx(-2.0));
  CHECK(cmf(1) == doctest::Approx(2.0));
}

TEST_CASE("cmf at the centre level and for the trivial block") {
  const auto p = ModelParams::resonant(1.0);
  for (auto st : {AngleStrategy::r1(), AngleStrategy::mp_r1(), AngleStrategy::r2(), AngleStrategy::r3()}) {
    CHECK(lambda_cmf(Block(0, 10), p, st)(5) == 0.0);
    CHECK(lambda_cmf(Block(1, 0), ModelParams::detuned(0.9, 1.0), st)(0) == doctest::Approx(0.3));
  }
}

TEST_CASE("cmf radicand stays non-negative over the whole angle range") {
  // 2[s + 2k + 1 + (2v - s) c] >= 2(2k + 1) for |c| <= 1
  for (double c : {-1.0, -0.5, 0.0, 0.7, 1.0}) {
    for (int k = 0; k <= 1; ++k) {
      std::vector<int> clamped;
      const auto lam = lambda_cmf(Block(k, 30), ModelParams::resonant(1.0), AngleStrategy::explicit_cos2r(c), &clamped);
      CHECK(lam.allFinite());
      CHECK(clamped.empty());
    }
  }
}

TEST_CASE("approximation bundle") {
  const Block b(0, 20);
  const auto p = ModelParams::resonant(1.0);
  const auto a = approximate(b, p, AngleStrategy::r2());
  CHECK(a.S.has_value());
  CHECK(a.lambdas_qc.has_value());
  const auto m = approximate(b, p, AngleStrategy::mp_r1());
  CHECK_FALSE(m.S.has_value());
  CHECK_FALSE(m.lambdas_qc.has_value());
  const auto light = approximate(b, p, AngleStrategy::r1(), false);
  CHECK_FALSE(light.S.has_value());
  CHECK_THROWS_AS(qc_eigvectors(b, AngleStrategy::mp_r1()), ArgumentError);
}

TEST_CASE("original-gauge vectors carry the coupling phase") {
  const Block b(1, 6);
  const auto p = ModelParams::detuned(0.5, 1.0, 0.8);
  const Eigen::MatrixXd S = qc_eigvectors(b, AngleStrategy::r3());
  const Eigen::MatrixXcd Sg = qc_eigvectors_original_gauge(b, p, AngleStrategy::r3());
  for (int f = 0; f <= 6; ++f) {
    for (int v = 0; v <= 6; ++v) {
      CHECK(std::abs(Sg(f, v) - std::polar(1.0, 0.8 * (f - v)) * S(f, v)) <= 1e-14);
    }
  }
}
