#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "shg/cli.hpp"
#include "shg/csv.hpp"

using namespace shg;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "shg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("shg_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(std::sqrt(2.0)) == "1.41421356237");
  CHECK(format_number(-std::sqrt(2.0)) == "-1.41421356237");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(1536.9213, 5) == "1536.9");
}

TEST_CASE("two-level spectrum file") {
  const auto dir = scratch("s1");
  const auto r = invoke({"spectrum", "--k", "0", "--s", "1", "--resonance", "--g", "1", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(read_file(dir / "spectrum.csv") == "v,lambda\n0,-1.41421356237\n1,1.41421356237\n");
}

TEST_CASE("single-level block prints delta * l0") {
  const auto dir = scratch("s0");
  REQUIRE(invoke({"spectrum", "--k", "1", "--s", "0", "--delta", "1.5", "--out", dir.string()}).code == 0);
  CHECK(read_file(dir / "spectrum.csv") == "v,lambda\n0,0.5\n");
}

TEST_CASE("amplitudes and both methods") {
  const auto dir = scratch("both");
  REQUIRE(invoke({"spectrum", "--k", "0", "--s", "2", "--method", "both", "--amplitudes", "--out", dir.string()})
              .code == 0);
  const auto amps = parse_csv(read_file(dir / "amplitudes.csv"));
  REQUIRE(amps.size() == 10);
  CHECK(amps[0] == std::vector<std::string>{"v", "f", "Q"});
  CHECK(amps[4][0] == "1");
  CHECK(amps[4][1] == "0");
  CHECK(std::stod(amps[4][2]) == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(std::filesystem::exists(dir / "spectrum_oracle.csv"));
  CHECK(std::filesystem::exists(dir / "amplitudes_oracle.csv"));
}

TEST_CASE("compare reproduces the s = 100 table at stride 10") {
  const auto dir = scratch("compare");
  const auto r = invoke({"compare", "--k", "0", "--s", "100", "--resonance", "--g", "1", "--stride", "10", "--table1",
                         "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(read_file(dir / "compare.csv"));
  REQUIRE(rows.size() == 1 + 11 + 3);
  CHECK(rows[0] == std::vector<std::string>{"v", "lambda_exact", "cmf_r1", "cmf_mp_r1", "cmf_r2", "cmf_r3"});
  CHECK(rows[1][0] == "0");
  CHECK(std::abs(std::stod(rows[1][1]) + 1536.9) <= 0.2);
  CHECK(rows[12][0] == "delta2_H");
  CHECK(rows[12][1].empty());
  CHECK(std::abs(std::stod(rows[13][5]) - 0.657) <= 0.02);
  CHECK(r.out.find("-1536.9") != std::string::npos);

  const auto overlap = parse_csv(read_file(dir / "overlap.csv"));
  CHECK(overlap[0] == std::vector<std::string>{"v", "strategy", "cos", "delta2_ef"});
  REQUIRE(overlap.size() == 1 + 3 * 11);
  for (std::size_t i = 1; i < overlap.size(); ++i) {
    CHECK(overlap[i][1] != "mp_r1");
    const double d = std::stod(overlap[i][3]);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("compare on the two-level block") {
  const auto dir = scratch("compare1");
  REQUIRE(invoke({"compare", "--k", "0", "--s", "1", "--resonance", "--out", dir.string(), "--no-overlap"}).code == 0);
  const auto rows = parse_csv(read_file(dir / "compare.csv"));
  CHECK(std::stod(rows[1][1]) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(std::stod(rows[1][5]) == doctest::Approx(-2.0));
  CHECK(std::stod(rows[2][5]) == doctest::Approx(2.0));
  CHECK_FALSE(std::filesystem::exists(dir / "overlap.csv"));
}

TEST_CASE("dynamics file layout") {
  const auto dir = scratch("dyn");
  REQUIRE(invoke({"dynamics", "--init", "fock:0,1", "--t-max", "2", "--steps", "40", "--out", dir.string()}).code == 0);
  const auto rows = parse_csv(read_file(dir / "dynamics.csv"));
  REQUIRE(rows.size() == 42);
  CHECK(rows[0] == std::vector<std::string>{"t", "tau", "Y0", "N0", "N1"});
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "0");
  CHECK(rows[1][3] == "1");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    const double c = std::cos(std::sqrt(2.0) * t);
    CHECK(std::abs(std::stod(rows[i][3]) - c * c) <= 1e-10);
  }
}

TEST_CASE("dynamics with the closed form, normalized") {
  const auto dir = scratch("dynqc");
  REQUIRE(invoke({"dynamics", "--k", "0", "--s", "100", "--resonance", "--g", "1", "--init", "cluster", "--tau-max",
                  "25", "--steps", "200", "--qc", "--normalize", "--out", dir.string()})
              .code == 0);
  const auto rows = parse_csv(read_file(dir / "dynamics.csv"));
  REQUIRE(rows.size() == 202);
  CHECK(rows[0].size() == 7);
  CHECK(rows[0][6] == "N0_qc");
  CHECK(rows[1][3] == "1");
  CHECK(rows[1][6] == "1");
  CHECK(std::stod(rows.back()[1]) == doctest::Approx(25.0));
}

TEST_CASE("json mirror") {
  const auto dir = scratch("json");
  REQUIRE(invoke({"compare", "--s", "4", "--format", "json", "--out", dir.string()}).code == 0);
  const auto text = read_file(dir / "compare.json");
  for (const char* key : {"\"v\"", "\"lambda\"", "\"cmf\"", "\"delta2\""}) CHECK(text.find(key) != std::string::npos);
  REQUIRE(invoke({"dynamics", "--s", "3", "--t-max", "1", "--steps", "5", "--format", "json", "--out",
                  dir.string()})
              .code == 0);
  CHECK(read_file(dir / "dynamics.json").find("\"series\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitArgument);
  CHECK(invoke({"spectrum", "--k", "2", "--s", "3"}).code == cli::kExitArgument);
  CHECK(invoke({"spectrum", "--s", "-1"}).code == cli::kExitArgument);
  CHECK(invoke({"spectrum", "--delta", "1", "--resonance"}).code == cli::kExitArgument);
  CHECK(invoke({"spectrum", "--omega0", "1"}).code == cli::kExitArgument);
  CHECK(invoke({"spectrum", "--g", "-1"}).code == cli::kExitArgument);
  CHECK(invoke({"spectrum", "--method", "qr"}).code == cli::kExitArgument);
  CHECK(invoke({"compare", "--method", "both"}).code == cli::kExitArgument);
  CHECK(invoke({"dynamics", "--s", "3"}).code == cli::kExitArgument);
  CHECK(invoke({"dynamics", "--s", "3", "--t-max", "1", "--tau-max", "1"}).code == cli::kExitArgument);
  CHECK(invoke({"dynamics", "--s", "1", "--t-max", "1", "--qc"}).code == cli::kExitArgument);
  CHECK(invoke({"dynamics", "--init", "fock:1", "--t-max", "1"}).code == cli::kExitArgument);
  CHECK(invoke({"dynamics", "--init", "coherent:0,0", "--tau-max", "1"}).code == cli::kExitArgument);
  CHECK(invoke({"dynamics", "--init", "coherent:0,5", "--s-cap", "10", "--t-max", "1"}).code == cli::kExitCapacity);
  CHECK(invoke({"spectrum", "--help"}).code == cli::kExitOk);
}

TEST_CASE("environment overrides for output directory and workers") {
  const auto dir = scratch("env");
  ::setenv("SHG_OUT_DIR", dir.string().c_str(), 1);
  ::setenv("SHG_WORKERS", "3", 1);
  const auto r = invoke({"spectrum", "--s", "3"});
  ::unsetenv("SHG_OUT_DIR");
  ::unsetenv("SHG_WORKERS");
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(dir / "spectrum.csv"));
  ::setenv("SHG_WORKERS", "many", 1);
  CHECK(invoke({"spectrum", "--s", "3", "--out", dir.string()}).code == cli::kExitArgument);
  ::unsetenv("SHG_WORKERS");
}

TEST_CASE("outputs do not depend on the worker count") {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"spectrum", "--s", "300", "--amplitudes"},
        std::vector<std::string>{"compare", "--s", "60", "--delta", "0.7"},
        std::vector<std::string>{"dynamics", "--init", "coherent:1.5,2.5", "--tau-max", "10", "--steps", "300"}}) {
    std::string first;
    for (const char* w : {"1", "4", "1"}) {
      const auto dir = scratch(std::string("det") + w);
      auto args = base;
      args.insert(args.end(), {"--workers", w, "--out", dir.string()});
      REQUIRE(invoke(args).code == 0);
      std::map<std::string, std::string> files;
      for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        files[entry.path().filename().string()] = read_file(entry.path());
      }
      std::string all;
      for (const auto& [name, text] : files) all += name + "\n" + text;
      if (first.empty()) {
        first = all;
      } else {
        CHECK(all == first);
      }
    }
  }
}
