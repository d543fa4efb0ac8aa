#pragma once

// Time evolution of <Y0>, <N0>, <N1> from the per-block spectral
// representation. Every observable here is diagonal in the block basis
// (Y0 = f - s/2 on block (k,s)), so coherences between blocks never
// contribute and a state is handled as a weighted set of per-block pure
// states.

#include <Eigen/Core>

#include <complex>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "shg/exact_spectrum.hpp"
#include "shg/model.hpp"

namespace shg {

// One block's share of an initial state: unit amplitude vector over f in the
// original Fock basis and the probability carried by the block.
struct BlockComponent {
  Block block;
  Eigen::VectorXcd amplitudes;
  double weight = 1.0;
};

inline constexpr int kDefaultCoherentSCap = 4000;

// Two-mode Glauber state |alpha1, alpha0> split over blocks in order of
// k + 2s (the conserved n1 + 2 n0), stopping once the captured probability
// reaches 1 - eps. Weights are the raw Poisson probabilities.
std::vector<BlockComponent> coherent_weights(std::complex<double> alpha1, std::complex<double> alpha0,
                                             double eps, int s_cap = kDefaultCoherentSCap);

class InitialState {
 public:
  // Lowest-weight state |k,s> = |n1 = k, n0 = s>.
  static InitialState cluster(int k, int s);
  static InitialState fock(int n1, int n0);
  static InitialState coherent(std::complex<double> alpha1, std::complex<double> alpha0, double eps,
                               int s_cap = kDefaultCoherentSCap);
  static InitialState from_components(std::vector<BlockComponent> components);

  const std::vector<BlockComponent>& components() const { return components_; }
  double total_weight() const;
  double s_bar() const;
  double k_bar() const;
  // Single block with all amplitude on f = 0.
  bool is_cluster() const;

 private:
  explicit InitialState(std::vector<BlockComponent> components);
  std::vector<BlockComponent> components_;
};

struct BlockTrace {
  Eigen::VectorXd y0;
  Eigen::VectorXd norm;  // sum_f |c_f(t)|^2
};

// c is a unit vector in the real gauge of `solution`.
BlockTrace evolve_block(const SpectralSolution& solution, const Eigen::VectorXcd& c, VectorRef times);

struct DynamicsTrace {
  Eigen::VectorXd times;
  Eigen::VectorXd taus;  // g t sqrt(2 s_bar)
  Eigen::VectorXd y0;
  Eigen::VectorXd n0;
  Eigen::VectorXd n1;
  std::optional<Eigen::VectorXd> y0_qc;
  double s_bar = 0.0;
  double k_bar = 0.0;
  double max_norm_error = 0.0;  // max_t max_blocks |sum_f |c_f(t)|^2 - 1|
};

// Spectral solutions keyed by (k, s, Delta, |g|).
class SolutionCache {
 public:
  const SpectralSolution& get(const Block& block, const ModelParams& params, SolveMethod method);
  std::size_t size() const { return cache_.size(); }

 private:
  std::map<std::tuple<int, int, double, double, int>, SpectralSolution> cache_;
};

struct EvolveOptions {
  SolveMethod method = SolveMethod::sturm;
  int workers = 1;
};

DynamicsTrace evolve(const InitialState& initial, const ModelParams& params, VectorRef times,
                     const EvolveOptions& options = {}, SolutionCache* cache = nullptr);

// Physical times for a grid in tau = g t sqrt(2 s_bar).
Eigen::VectorXd times_from_taus(VectorRef taus, double g_abs, double s_bar);

struct ClosedFormRates {
  double omega_L = 0.0;  // 4|g| sqrt((1 - 1/s)(s/2 + k + 1/2))
  double omega_l = 0.0;  // 4|g| sqrt(s - 1) / (s sqrt(2s + 4k + 2))
};

ClosedFormRates closed_form_rates(const Block& block, const ModelParams& params);

// Continuous branch of Phi with tan Phi = tan(omega_l t) / sqrt(s), Phi(0) = 0.
double closed_form_phase(double omega_l, int s, double t);

// Quasiclassical <Y0(t)> for the cluster state of `block` at resonance:
// -1/2 {1 + (s-1) A(t) cos[omega_L t - (s-1) Phi(t)]},
// A(t) = [cos^2(omega_l t) + sin^2(omega_l t)/s]^{(s-1)/2}. Needs s >= 2.
Eigen::VectorXd qc_closed_form(const Block& block, const ModelParams& params, VectorRef times);

}  // namespace shg
