#pragma once

// Command-line front end: spectrum, compare and dynamics subcommands. The
// runners assemble every output file in memory before anything is written.

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shg/exact_spectrum.hpp"
#include "shg/model.hpp"

namespace shg::cli {

enum class Command { spectrum, compare, dynamics };
enum class OutputFormat { csv, json };

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitCapacity = 4;

struct InitSpec {
  enum class Kind { cluster, fock, coherent } kind = Kind::cluster;
  int n1 = 0;
  int n0 = 0;
  std::complex<double> alpha1{};
  std::complex<double> alpha0{};
};

// "cluster", "fock:N1,N0", "coherent:A1,A0" or "coherent:RE1,IM1,RE0,IM0".
InitSpec parse_init(const std::string& text);

struct RunConfig {
  Command command = Command::spectrum;
  int k = 0;
  int s = 0;
  ModelParams params = ModelParams::resonant(1.0);
  std::string method = "sturm";  // sturm | oracle | both (spectrum only)
  bool amplitudes = false;
  int stride = 1;
  bool table1 = false;
  bool overlap = true;
  InitSpec init;
  double eps = 1e-10;
  int s_cap = 4000;
  std::optional<double> tau_max;
  std::optional<double> t_max;
  int steps = 1000;
  bool qc = false;
  bool normalize = false;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  int workers = 1;
  double rel_tol = 1e-13;
  int digits = 12;
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  std::vector<OutputFile> files;
  std::string console;  // text for stdout (the --table1 view)
};

RunResult run_spectrum(const RunConfig& config);
RunResult run_compare(const RunConfig& config);
RunResult run_dynamics(const RunConfig& config);
RunResult run(const RunConfig& config);

// Parses argv (honouring SHG_OUT_DIR and SHG_WORKERS), runs, writes files
// under the output directory, and returns the exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shg::cli
