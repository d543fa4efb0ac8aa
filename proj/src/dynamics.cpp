#include "shg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shg/errors.hpp"
#include "shg/parallel.hpp"

namespace shg {

namespace {

constexpr Eigen::Index kTimeChunk = 256;

// log |alpha^n / sqrt(n!)|, with 0^0 = 1.
double log_poisson_amplitude(double log_abs_alpha, int n) {
  const double power = n == 0 ? 0.0 : n * log_abs_alpha;
  return power - 0.5 * std::lgamma(n + 1.0);
}

}  // namespace

std::vector<BlockComponent> coherent_weights(std::complex<double> alpha1, std::complex<double> alpha0,
                                             double eps, int s_cap) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("coherent_weights: eps must lie in (0, 1)");
  if (eps < 1e-14) throw ArgumentError("coherent_weights: eps below 1e-14 is not resolvable in double");
  if (!std::isfinite(std::abs(alpha1)) || !std::isfinite(std::abs(alpha0))) {
    throw ArgumentError("coherent_weights: amplitudes must be finite");
  }
  const double log_a1 = std::log(std::abs(alpha1));
  const double log_a0 = std::log(std::abs(alpha0));
  const double phase1 = std::arg(alpha1), phase0 = std::arg(alpha0);
  const double log_vacuum = -0.5 * (std::norm(alpha1) + std::norm(alpha0));

  std::vector<BlockComponent> out;
  double captured = 0.0;
  for (long m = 0;; ++m) {
    const int k = static_cast<int>(m % 2);
    const int s = static_cast<int>((m - k) / 2);
    const bool keep = s <= s_cap;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(keep ? s + 1 : 0);
    double weight = 0.0;
    for (int f = 0; f <= s; ++f) {
      const int n1 = k + 2 * f, n0 = s - f;
      const double log_mag =
          log_vacuum + log_poisson_amplitude(log_a1, n1) + log_poisson_amplitude(log_a0, n0);
      const double mag = std::exp(log_mag);
      weight += mag * mag;
      if (keep) c(f) = std::polar(mag, n1 * phase1 + n0 * phase0);
    }
    captured += weight;
    if (keep && weight > 0.0) out.push_back({Block(k, s), c / std::sqrt(weight), weight});
    if (captured >= 1.0 - eps) {
      if (!keep) {
        throw CapacityError("coherent state needs blocks up to s_max = " + std::to_string(s) +
                                " (cap " + std::to_string(s_cap) + ")",
                            s);
      }
      break;
    }
  }
  return out;
}

InitialState::InitialState(std::vector<BlockComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw ArgumentError("InitialState: no blocks");
  for (const auto& c : components_) {
    if (c.amplitudes.size() != c.block.dim()) throw ArgumentError("InitialState: amplitude length mismatch");
    if (std::abs(c.amplitudes.norm() - 1.0) > 1e-10) throw ArgumentError("InitialState: amplitudes not unit");
    if (!(c.weight >= 0.0)) throw ArgumentError("InitialState: negative weight");
  }
  std::stable_sort(components_.begin(), components_.end(),
                   [](const BlockComponent& a, const BlockComponent& b) { return a.block < b.block; });
  if (!(total_weight() > 0.0)) throw ArgumentError("InitialState: total weight is zero");
}

InitialState InitialState::cluster(int k, int s) {
  Block block(k, s);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(block.dim());
  c(0) = 1.0;
  return InitialState({{block, c, 1.0}});
}

InitialState InitialState::fock(int n1, int n0) {
  auto [block, f] = fock_to_block(n1, n0);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(block.dim());
  c(f) = 1.0;
  return InitialState({{block, c, 1.0}});
}

InitialState InitialState::coherent(std::complex<double> alpha1, std::complex<double> alpha0, double eps,
                                    int s_cap) {
  return InitialState(coherent_weights(alpha1, alpha0, eps, s_cap));
}

InitialState InitialState::from_components(std::vector<BlockComponent> components) {
  return InitialState(std::move(components));
}

double InitialState::total_weight() const {
  double w = 0.0;
  for (const auto& c : components_) w += c.weight;
  return w;
}

double InitialState::s_bar() const {
  double acc = 0.0;
  for (const auto& c : components_) acc += c.weight * c.block.s();
  return acc / total_weight();
}

double InitialState::k_bar() const {
  double acc = 0.0;
  for (const auto& c : components_) acc += c.weight * c.block.k();
  return acc / total_weight();
}

bool InitialState::is_cluster() const {
  if (components_.size() != 1) return false;
  const auto& c = components_.front().amplitudes;
  return std::abs(std::abs(c(0)) - 1.0) < 1e-12;
}

BlockTrace evolve_block(const SpectralSolution& solution, const Eigen::VectorXcd& c, VectorRef times) {
  const Eigen::Index n = solution.lambdas.size();
  if (c.size() != n) throw ArgumentError("evolve_block: amplitude vector length mismatch");
  if (std::abs(c.norm() - 1.0) > 1e-10) throw ArgumentError("evolve_block: amplitude vector is not unit");

  const Eigen::MatrixXcd Q = solution.Q.cast<std::complex<double>>();
  const Eigen::VectorXcd a = Q.transpose() * c;
  Eigen::VectorXd y_diag(n);
  for (Eigen::Index f = 0; f < n; ++f) y_diag(f) = static_cast<double>(f) - 0.5 * (n - 1);

  BlockTrace out{Eigen::VectorXd(times.size()), Eigen::VectorXd(times.size())};
  for (Eigen::Index t0 = 0; t0 < times.size(); t0 += kTimeChunk) {
    const Eigen::Index m = std::min(kTimeChunk, times.size() - t0);
    Eigen::MatrixXcd phased(n, m);
    for (Eigen::Index t = 0; t < m; ++t) {
      const double time = times(t0 + t);
      for (Eigen::Index v = 0; v < n; ++v) {
        phased(v, t) = a(v) * std::polar(1.0, -solution.lambdas(v) * time);
      }
    }
    Eigen::MatrixXd prob = (Q * phased).cwiseAbs2();
    // U(0) is the identity; skip the round trip through Q.
    for (Eigen::Index t = 0; t < m; ++t) {
      if (times(t0 + t) == 0.0) prob.col(t) = c.cwiseAbs2();
    }
    out.y0.segment(t0, m) = prob.transpose() * y_diag;
    out.norm.segment(t0, m) = prob.colwise().sum().transpose();
  }
  return out;
}

const SpectralSolution& SolutionCache::get(const Block& block, const ModelParams& params, SolveMethod method) {
  const auto key = std::make_tuple(block.k(), block.s(), params.delta(), params.g_abs, static_cast<int>(method));
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, solve(block, params, method)).first;
  return it->second;
}

DynamicsTrace evolve(const InitialState& initial, const ModelParams& params, VectorRef times,
                     const EvolveOptions& options, SolutionCache* cache) {
  const auto& parts = initial.components();
  SolutionCache local;
  SolutionCache& store = cache ? *cache : local;

  std::vector<const SpectralSolution*> solutions(parts.size());
  for (std::size_t b = 0; b < parts.size(); ++b) solutions[b] = &store.get(parts[b].block, params, options.method);

  std::vector<BlockTrace> traces(parts.size());
  parallel_for(parts.size(), options.workers, [&](std::size_t b) {
    // Real gauge: c_f -> (g*/|g|)^f c_f.
    Eigen::VectorXcd c = parts[b].amplitudes;
    for (Eigen::Index f = 0; f < c.size(); ++f) c(f) *= std::polar(1.0, -params.g_phase * static_cast<double>(f));
    traces[b] = evolve_block(*solutions[b], c, times);
  });

  DynamicsTrace out;
  out.times = times;
  out.s_bar = initial.s_bar();
  out.k_bar = initial.k_bar();
  out.taus = times * (params.g_abs * std::sqrt(2.0 * out.s_bar));
  out.y0 = Eigen::VectorXd::Zero(times.size());
  const double total = initial.total_weight();
  for (std::size_t b = 0; b < parts.size(); ++b) {
    out.y0 += (parts[b].weight / total) * traces[b].y0;
    out.max_norm_error = std::max(out.max_norm_error, (traces[b].norm.array() - 1.0).abs().maxCoeff());
  }
  out.n0 = (0.5 * out.s_bar - out.y0.array()).matrix();
  out.n1 = (out.s_bar + out.k_bar + 2.0 * out.y0.array()).matrix();
  return out;
}

Eigen::VectorXd times_from_taus(VectorRef taus, double g_abs, double s_bar) {
  const double rate = g_abs * std::sqrt(2.0 * s_bar);
  if (!(rate > 0.0)) throw ArgumentError("times_from_taus: tau is undefined when g_abs * s_bar = 0");
  return taus / rate;
}

ClosedFormRates closed_form_rates(const Block& block, const ModelParams& params) {
  const double s = block.s(), k = block.k();
  if (block.s() < 2) throw ArgumentError("closed_form_rates: needs s >= 2");
  return {4.0 * params.g_abs * std::sqrt((1.0 - 1.0 / s) * (0.5 * s + k + 0.5)),
          4.0 * params.g_abs * std::sqrt(s - 1.0) / (s * std::sqrt(2.0 * s + 4.0 * k + 2.0))};
}

double closed_form_phase(double omega_l, int s, double t) {
  const double x = omega_l * t;
  const double turns = std::round(x / std::numbers::pi);
  const double y = x - turns * std::numbers::pi;
  return turns * std::numbers::pi + std::atan2(std::sin(y), std::sqrt(static_cast<double>(s)) * std::cos(y));
}

Eigen::VectorXd qc_closed_form(const Block& block, const ModelParams& params, VectorRef times) {
  if (block.s() < 2) throw ArgumentError("qc_closed_form: needs s >= 2");
  const auto rates = closed_form_rates(block, params);
  const int s = block.s();
  Eigen::VectorXd y0(times.size());
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    const double t = times(i);
    const double c = std::cos(rates.omega_l * t), sn = std::sin(rates.omega_l * t);
    const double envelope = std::pow(c * c + sn * sn / s, 0.5 * (s - 1));
    const double phi = closed_form_phase(rates.omega_l, s, t);
    y0(i) = -0.5 * (1.0 + (s - 1) * envelope * std::cos(rates.omega_L * t - (s - 1) * phi));
  }
  return y0;
}

}  // namespace shg
