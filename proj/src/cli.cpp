#include "shg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "shg/csv.hpp"
#include "shg/dynamics.hpp"
#include "shg/errors.hpp"
#include "shg/measures.hpp"
#include "shg/quasiclassical.hpp"

namespace shg::cli {

namespace {

using nlohmann::json;

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgumentError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x)) throw ArgumentError("cannot parse " + what + " from '" + text + "'");
  return x;
}

int parse_int(const std::string& text, const std::string& what) {
  const double x = parse_double(text, what);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ArgumentError(what + " must be an integer, got '" + text + "'");
  return static_cast<int>(x);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

SolveMethod single_method(const RunConfig& config) {
  if (config.method == "both") throw ArgumentError("--method both is only available for 'spectrum'");
  return parse_solve_method(config.method);
}

BisectionOptions bisection_options(const RunConfig& config) {
  BisectionOptions options;
  options.rel_tol = config.rel_tol;
  options.workers = config.workers;
  return options;
}

std::string fmt(const RunConfig& config, double x) { return format_number(x, config.digits); }

std::string fixed(double x, int decimals) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(decimals) << (x == 0.0 ? 0.0 : x);
  std::string s = os.str();
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Eigen::VectorXd grid(double end, int steps) {
  Eigen::VectorXd out(steps + 1);
  for (int i = 0; i <= steps; ++i) out(i) = end * (static_cast<double>(i) / steps);
  return out;
}

struct SpectrumData {
  Eigen::VectorXd lambdas;
  std::optional<Eigen::MatrixXd> Q;
};

SpectrumData spectrum_for(const Block& block, const ModelParams& params, SolveMethod method, bool vectors,
                          const BisectionOptions& options) {
  if (vectors) {
    auto sol = solve(block, params, method, options);
    return {std::move(sol.lambdas), std::move(sol.Q)};
  }
  if (method == SolveMethod::sturm) return {eigenvalues_sturm(block, params, options), std::nullopt};
  const auto op = hamiltonian_matrix(block, params);
  if (params.g_abs == 0.0) return {solve(block, params, method, options).lambdas, std::nullopt};
  return {tridiagonal_eigen_oracle(op.diag, op.offdiag, false).values, std::nullopt};
}

void emit_spectrum(const RunConfig& config, const SpectrumData& data, const std::string& suffix,
                   RunResult& result) {
  const Eigen::Index n = data.lambdas.size();
  CsvTable table({"v", "lambda"});
  for (Eigen::Index v = 0; v < n; ++v) table.add_row({std::to_string(v), fmt(config, data.lambdas(v))});
  if (config.format == OutputFormat::csv) {
    result.files.push_back({"spectrum" + suffix + ".csv", table.str()});
  }
  json doc;
  std::vector<int> vs(n);
  for (Eigen::Index v = 0; v < n; ++v) vs[v] = static_cast<int>(v);
  doc["v"] = vs;
  doc["lambda"] = to_std(data.lambdas);

  if (data.Q) {
    CsvTable amps({"v", "f", "Q"});
    json columns = json::array();
    for (Eigen::Index v = 0; v < n; ++v) {
      for (Eigen::Index f = 0; f < n; ++f) {
        amps.add_row({std::to_string(v), std::to_string(f), fmt(config, (*data.Q)(f, v))});
      }
      columns.push_back(to_std(data.Q->col(v)));
    }
    if (config.format == OutputFormat::csv) {
      result.files.push_back({"amplitudes" + suffix + ".csv", amps.str()});
    }
    doc["Q"] = std::move(columns);
  }
  if (config.format == OutputFormat::json) {
    result.files.push_back({"spectrum" + suffix + ".json", doc.dump(1) + "\n"});
  }
}

}  // namespace

InitSpec parse_init(const std::string& text) {
  InitSpec spec;
  if (text == "cluster") return spec;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), ',');
  if (kind == "fock") {
    if (args.size() != 2) throw ArgumentError("--init fock needs fock:N1,N0");
    spec.kind = InitSpec::Kind::fock;
    spec.n1 = parse_int(args[0], "fock n1");
    spec.n0 = parse_int(args[1], "fock n0");
    if (spec.n1 < 0 || spec.n0 < 0) throw ArgumentError("--init fock: occupations must be >= 0");
    return spec;
  }
  if (kind == "coherent") {
    spec.kind = InitSpec::Kind::coherent;
    if (args.size() == 2) {
      spec.alpha1 = parse_double(args[0], "alpha1");
      spec.alpha0 = parse_double(args[1], "alpha0");
    } else if (args.size() == 4) {
      spec.alpha1 = {parse_double(args[0], "Re alpha1"), parse_double(args[1], "Im alpha1")};
      spec.alpha0 = {parse_double(args[2], "Re alpha0"), parse_double(args[3], "Im alpha0")};
    } else {
      throw ArgumentError("--init coherent needs coherent:A1,A0 or coherent:RE1,IM1,RE0,IM0");
    }
    return spec;
  }
  throw ArgumentError("unknown --init '" + text + "' (cluster, fock:N1,N0, coherent:...)");
}

RunResult run_spectrum(const RunConfig& config) {
  const Block block(config.k, config.s);
  const auto options = bisection_options(config);
  RunResult result;
  std::vector<SolveMethod> methods;
  if (config.method == "both") {
    methods = {SolveMethod::sturm, SolveMethod::oracle};
  } else {
    methods = {parse_solve_method(config.method)};
  }
  SpectrumData primary;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    auto data = spectrum_for(block, config.params, methods[i], config.amplitudes, options);
    emit_spectrum(config, data, i == 0 ? "" : "_oracle", result);
    if (i == 0) primary = std::move(data);
  }
  if (config.table1) {
    std::ostringstream os;
    os << "v\tlambda\n";
    for (Eigen::Index v = 0; v < primary.lambdas.size(); v += config.stride) {
      os << v << '\t' << fixed(primary.lambdas(v), 1) << '\n';
    }
    result.console = os.str();
  }
  return result;
}

RunResult run_compare(const RunConfig& config) {
  const Block block(config.k, config.s);
  const SolveMethod method = single_method(config);
  const auto exact = solve(block, config.params, method, bisection_options(config));
  const std::vector<AngleStrategy> strategies = {AngleStrategy::r1(), AngleStrategy::mp_r1(), AngleStrategy::r2(),
                                                 AngleStrategy::r3()};
  std::vector<QCApproximation> approx;
  for (const auto& st : strategies) {
    approx.push_back(approximate(block, config.params, st, config.overlap && st.single_angle()));
  }

  const Eigen::Index n = block.dim();
  CsvTable table({"v", "lambda_exact", "cmf_r1", "cmf_mp_r1", "cmf_r2", "cmf_r3"});
  std::ostringstream console;
  console << "v\texact\tr1\t-+r1\tr2\tr3\n";
  for (Eigen::Index v = 0; v < n; v += config.stride) {
    std::vector<std::string> row = {std::to_string(v), fmt(config, exact.lambdas(v))};
    console << v << '\t' << fixed(exact.lambdas(v), 1);
    for (const auto& a : approx) {
      row.push_back(fmt(config, a.lambdas_cmf(v)));
      console << '\t' << fixed(a.lambdas_cmf(v), 1);
    }
    console << '\n';
    table.add_row(std::move(row));
  }

  // Footer measures in percent; NaN where the exact spectrum vanishes.
  auto percent = [](auto&& measure) {
    try {
      return 100.0 * measure();
    } catch (const UndefinedMeasureError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const std::vector<std::string> names = {"delta2_H", "delta2_E", "delta2_E_up"};
  json delta2 = json::object();
  for (std::size_t m = 0; m < names.size(); ++m) {
    std::vector<std::string> row = {names[m], ""};
    console << names[m];
    for (std::size_t i = 0; i < approx.size(); ++i) {
      const auto& lam = approx[i].lambdas_cmf;
      const double value = percent([&] {
        if (m == 0) return delta2_H(exact.lambdas, lam);
        return delta2_E(exact.lambdas, lam, m == 2);
      });
      row.push_back(fmt(config, value));
      console << '\t' << fixed(value, 3);
      delta2[strategies[i].name()][names[m]] = finite_or_null(value);
    }
    console << '\n';
    table.add_row(std::move(row));
  }

  RunResult result;
  json doc;
  std::vector<int> vs;
  std::vector<double> lam;
  for (Eigen::Index v = 0; v < n; v += config.stride) {
    vs.push_back(static_cast<int>(v));
    lam.push_back(exact.lambdas(v));
  }
  doc["v"] = vs;
  doc["lambda"] = lam;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    std::vector<double> col;
    for (Eigen::Index v = 0; v < n; v += config.stride) col.push_back(approx[i].lambdas_cmf(v));
    doc["cmf"][strategies[i].name()] = col;
  }
  doc["delta2"] = delta2;

  if (config.format == OutputFormat::csv) result.files.push_back({"compare.csv", table.str()});

  if (config.overlap) {
    CsvTable overlap({"v", "strategy", "cos", "delta2_ef"});
    json ov = json::array();
    for (std::size_t i = 0; i < approx.size(); ++i) {
      if (!approx[i].S) continue;
      for (Eigen::Index v = 0; v < n; v += config.stride) {
        const auto o = overlap_deficit(approx[i].S->col(v), exact.Q.col(v));
        overlap.add_row({std::to_string(v), strategies[i].name(), fmt(config, o.cosine), fmt(config, o.deficit)});
        ov.push_back({{"v", v}, {"strategy", strategies[i].name()}, {"cos", o.cosine}, {"delta2_ef", o.deficit}});
      }
    }
    if (config.format == OutputFormat::csv) {
      result.files.push_back({"overlap.csv", overlap.str()});
    } else {
      doc["overlap"] = std::move(ov);
    }
  }
  if (config.format == OutputFormat::json) result.files.push_back({"compare.json", doc.dump(1) + "\n"});
  if (config.table1) result.console = console.str();
  return result;
}

RunResult run_dynamics(const RunConfig& config) {
  const SolveMethod method = single_method(config);
  if (config.tau_max.has_value() == config.t_max.has_value()) {
    throw ArgumentError("dynamics needs exactly one of --tau-max and --t-max");
  }
  const double end = config.tau_max ? *config.tau_max : *config.t_max;
  if (!(end >= 0.0) || !std::isfinite(end)) throw ArgumentError("time range must be finite and >= 0");
  if (config.steps < 1) throw ArgumentError("--steps must be >= 1");

  const InitialState initial = [&] {
    switch (config.init.kind) {
      case InitSpec::Kind::cluster:
        return InitialState::cluster(config.k, config.s);
      case InitSpec::Kind::fock:
        return InitialState::fock(config.init.n1, config.init.n0);
      case InitSpec::Kind::coherent:
        break;
    }
    return InitialState::coherent(config.init.alpha1, config.init.alpha0, config.eps, config.s_cap);
  }();

  std::optional<Block> qc_block;
  if (config.qc) {
    if (!initial.is_cluster()) throw ArgumentError("--qc needs a cluster initial state");
    if (config.params.delta() != 0.0) throw ArgumentError("--qc needs exact resonance (delta = 0)");
    qc_block = initial.components().front().block;
    if (qc_block->s() < 2) throw ArgumentError("--qc needs s >= 2");
  }
  const double s_bar = initial.s_bar();
  if (config.normalize && !(s_bar > 0.0)) throw ArgumentError("--normalize needs s_bar > 0");

  const Eigen::VectorXd times = config.tau_max ? times_from_taus(grid(end, config.steps), config.params.g_abs, s_bar)
                                               : grid(end, config.steps);

  EvolveOptions options;
  options.method = method;
  options.workers = config.workers;
  auto trace = evolve(initial, config.params, times, options);
  if (config.tau_max) trace.taus = grid(end, config.steps);
  if (qc_block) trace.y0_qc = qc_closed_form(*qc_block, config.params, times);

  const double scale = config.normalize ? 1.0 / s_bar : 1.0;
  std::vector<std::string> header = {"t", "tau", "Y0", "N0", "N1"};
  if (trace.y0_qc) {
    header.push_back("Y0_qc");
    header.push_back("N0_qc");
  }
  CsvTable table(header);
  json series;
  std::vector<double> n0_qc;
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    std::vector<std::string> row = {fmt(config, trace.times(i)), fmt(config, trace.taus(i)), fmt(config, trace.y0(i)),
                                    fmt(config, scale * trace.n0(i)), fmt(config, scale * trace.n1(i))};
    if (trace.y0_qc) {
      const double nq = 0.5 * s_bar - (*trace.y0_qc)(i);
      n0_qc.push_back(scale * nq);
      row.push_back(fmt(config, (*trace.y0_qc)(i)));
      row.push_back(fmt(config, scale * nq));
    }
    table.add_row(std::move(row));
  }
  RunResult result;
  if (config.format == OutputFormat::csv) {
    result.files.push_back({"dynamics.csv", table.str()});
  } else {
    series["t"] = to_std(trace.times);
    series["tau"] = to_std(trace.taus);
    series["Y0"] = to_std(trace.y0);
    series["N0"] = to_std(scale * trace.n0);
    series["N1"] = to_std(scale * trace.n1);
    if (trace.y0_qc) {
      series["Y0_qc"] = to_std(*trace.y0_qc);
      series["N0_qc"] = n0_qc;
    }
    json doc;
    doc["series"] = std::move(series);
    result.files.push_back({"dynamics.json", doc.dump(1) + "\n"});
  }
  return result;
}

RunResult run(const RunConfig& config) {
  if (config.stride < 1) throw ArgumentError("--stride must be >= 1");
  if (config.workers < 1) throw ArgumentError("--workers must be >= 1");
  if (!(config.rel_tol > 0.0 && config.rel_tol < 1.0)) throw ArgumentError("--rel-tol must lie in (0, 1)");
  if (config.digits < 1 || config.digits > 17) throw ArgumentError("--digits must lie in [1, 17]");
  switch (config.command) {
    case Command::spectrum:
      return run_spectrum(config);
    case Command::compare:
      return run_compare(config);
    case Command::dynamics:
      return run_dynamics(config);
  }
  throw ArgumentError("unknown command");
}

namespace {

struct RawArgs {
  int k = 0;
  int s = 0;
  double g = 1.0;
  double g_phase = 0.0;
  double omega0 = 0.0;
  double omega1 = 0.0;
  double delta = 0.0;
  bool resonance = false;
  std::string method = "sturm";
  bool amplitudes = false;
  int stride = 1;
  bool table1 = false;
  bool no_overlap = false;
  std::string init = "cluster";
  double eps = 1e-10;
  int s_cap = 4000;
  double tau_max = 0.0;
  double t_max = 0.0;
  int steps = 1000;
  bool qc = false;
  bool normalize = false;
  std::string out;
  std::string format = "csv";
  int workers = 1;
  double rel_tol = 1e-13;
  int digits = 12;
};

struct OptionHandles {
  CLI::Option* omega0 = nullptr;
  CLI::Option* omega1 = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* resonance = nullptr;
  CLI::Option* tau_max = nullptr;
  CLI::Option* t_max = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* workers = nullptr;
};

OptionHandles add_common(CLI::App& sub, RawArgs& raw) {
  OptionHandles h;
  sub.add_option("--k", raw.k, "block parity index k (0 or 1)");
  sub.add_option("--s", raw.s, "block size index s (dimension s+1)");
  sub.add_option("--g", raw.g, "coupling magnitude |g|");
  sub.add_option("--g-phase", raw.g_phase, "coupling phase in radians");
  h.omega0 = sub.add_option("--omega0", raw.omega0, "pump frequency");
  h.omega1 = sub.add_option("--omega1", raw.omega1, "harmonic frequency");
  h.delta = sub.add_option("--delta", raw.delta, "detuning 2*omega1 - omega0");
  h.resonance = sub.add_flag("--resonance", raw.resonance, "exact resonance, delta = 0");
  h.omega0->needs(h.omega1);
  h.omega1->needs(h.omega0);
  h.delta->excludes(h.omega0)->excludes(h.omega1)->excludes(h.resonance);
  h.resonance->excludes(h.omega0)->excludes(h.omega1);
  sub.add_option("--method", raw.method, "sturm, oracle or both")
      ->check(CLI::IsMember({"sturm", "oracle", "both"}));
  h.out = sub.add_option("--out", raw.out, "output directory (default $SHG_OUT_DIR or .)");
  sub.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  h.workers = sub.add_option("--workers", raw.workers, "worker threads (default $SHG_WORKERS or 1)");
  sub.add_option("--rel-tol", raw.rel_tol, "bisection tolerance relative to the spectral width");
  sub.add_option("--digits", raw.digits, "significant digits in output files");
  sub.add_option("--stride", raw.stride, "print every stride-th level");
  sub.add_flag("--table1", raw.table1, "print a one-decimal table to stdout");
  return h;
}

RunConfig to_config(Command command, const RawArgs& raw, const OptionHandles& h) {
  RunConfig c;
  c.command = command;
  c.k = raw.k;
  c.s = raw.s;
  if (!std::isfinite(raw.g) || raw.g < 0.0) throw ArgumentError("--g must be finite and >= 0");
  if (h.omega0->count() > 0) {
    c.params = ModelParams(raw.omega0, raw.omega1, raw.g, raw.g_phase);
  } else if (h.delta->count() > 0) {
    c.params = ModelParams::detuned(raw.delta, raw.g, raw.g_phase);
  } else {
    c.params = ModelParams::resonant(raw.g, raw.g_phase);
  }
  c.method = raw.method;
  c.amplitudes = raw.amplitudes;
  c.stride = raw.stride;
  c.table1 = raw.table1;
  c.overlap = !raw.no_overlap;
  c.init = parse_init(raw.init);
  c.eps = raw.eps;
  c.s_cap = raw.s_cap;
  if (h.tau_max && h.tau_max->count() > 0) c.tau_max = raw.tau_max;
  if (h.t_max && h.t_max->count() > 0) c.t_max = raw.t_max;
  c.steps = raw.steps;
  c.qc = raw.qc;
  c.normalize = raw.normalize;
  c.format = raw.format == "json" ? OutputFormat::json : OutputFormat::csv;
  c.rel_tol = raw.rel_tol;
  c.digits = raw.digits;

  if (h.out->count() > 0) {
    c.out_dir = raw.out;
  } else if (const char* env = std::getenv("SHG_OUT_DIR"); env && *env) {
    c.out_dir = env;
  }
  if (h.workers->count() > 0) {
    c.workers = raw.workers;
  } else if (const char* env = std::getenv("SHG_WORKERS"); env && *env) {
    c.workers = parse_int(env, "SHG_WORKERS");
  }
  // Block validity is checked here so bad flags fail before any work.
  if (command != Command::dynamics || c.init.kind == InitSpec::Kind::cluster) Block(c.k, c.s);
  return c;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Second-harmonic generation spectra, approximations and dynamics"};
  app.require_subcommand(1);
  RawArgs raw;

  auto* spectrum = app.add_subcommand("spectrum", "exact spectrum of one (k,s) block");
  auto* compare = app.add_subcommand("compare", "exact vs quasiclassical cmf eigenvalues and measures");
  auto* dynamics = app.add_subcommand("dynamics", "population dynamics");

  const auto h_spectrum = add_common(*spectrum, raw);
  spectrum->add_flag("--amplitudes", raw.amplitudes, "also write amplitudes.csv");

  const auto h_compare = add_common(*compare, raw);
  compare->add_flag("--no-overlap", raw.no_overlap, "skip eigenvector overlaps");

  auto h_dynamics = add_common(*dynamics, raw);
  dynamics->add_option("--init", raw.init, "cluster | fock:N1,N0 | coherent:A1,A0 | coherent:RE1,IM1,RE0,IM0");
  dynamics->add_option("--eps", raw.eps, "coherent-state truncation tolerance");
  dynamics->add_option("--s-cap", raw.s_cap, "largest block s allowed for coherent states");
  h_dynamics.tau_max = dynamics->add_option("--tau-max", raw.tau_max, "end of the grid in tau = g t sqrt(2 s_bar)");
  h_dynamics.t_max = dynamics->add_option("--t-max", raw.t_max, "end of the grid in t");
  h_dynamics.tau_max->excludes(h_dynamics.t_max);
  dynamics->add_option("--steps", raw.steps, "grid intervals (rows = steps + 1)");
  dynamics->add_flag("--qc", raw.qc, "add the closed-form quasiclassical columns");
  dynamics->add_flag("--normalize", raw.normalize, "divide populations by s_bar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitArgument;
  }

  try {
    RunConfig config;
    if (spectrum->parsed()) {
      config = to_config(Command::spectrum, raw, h_spectrum);
    } else if (compare->parsed()) {
      config = to_config(Command::compare, raw, h_compare);
    } else {
      config = to_config(Command::dynamics, raw, h_dynamics);
    }
    const RunResult result = run(config);
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& file : result.files) write_text_file(dir / file.name, file.content);
    out << result.console;
    return kExitOk;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace shg::cli
