// =============================================================================
// test_cli.cpp
// End-to-end checks of the command-line tool: exit codes, the CSV contract
// (comment block, headers, tokens), config-file precedence, and bitwise
// determinism across thread counts. argv[1] is the path to the built binary.
// =============================================================================
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/grover2d.hpp"
#include "qwalk/initial_conditions.hpp"
#include "qwalk/thermo.hpp"
#include "test_support.hpp"

using namespace qwalk;
using test_support::begin_case;

namespace {

std::string g_cli;
std::filesystem::path g_dir;

int run(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1, "failed to launch " << cmd);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good(), "missing output file " << path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Csv {
  std::vector<std::string> comments;          // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // raw tokens
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(line);
  while (std::getline(in, token, sep)) out.push_back(token);
  return out;
}

Csv parse_csv(const std::filesystem::path& path) {
  Csv csv;
  std::istringstream in(slurp(path));
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      csv.comments.push_back(line.substr(2));
    } else if (!header_seen) {
      csv.header = split(line, ',');
      header_seen = true;
    } else {
      csv.rows.push_back(split(line, ','));
    }
  }
  REQUIRE(header_seen, "no header line in " << path);
  return csv;
}

bool has_comment(const Csv& csv, const std::string& wanted) {
  for (const std::string& c : csv.comments)
    if (c == wanted) return true;
  return false;
}

double field(const Csv& csv, size_t row, const std::string& column) {
  for (size_t c = 0; c < csv.header.size(); ++c)
    if (csv.header[c] == column) {
      REQUIRE(row < csv.rows.size() && c < csv.rows[row].size(),
              "field " << column << " out of range");
      return std::stod(csv.rows[row][c]);
    }
  REQUIRE(false, "no column named " << column);
  return 0.0;
}

std::filesystem::path out_path(const std::string& name) { return g_dir / name; }

void exit_codes() {
  begin_case("exit codes");
  REQUIRE(run("--help > /dev/null 2>&1") == 0, "--help exits 0");
  REQUIRE(run("> /dev/null 2>&1") == 2, "missing subcommand exits 2");
  REQUIRE(run("frobnicate > /dev/null 2>&1") == 2, "unknown subcommand exits 2");
  REQUIRE(run("sweep-x --samples 1 --out " + out_path("bad.csv").string() +
              " 2> /dev/null") == 2,
          "sweep-x with one sample exits 2");
  REQUIRE(run("thermo --family bogus --out " + out_path("bad.csv").string() +
              " 2> /dev/null") == 2,
          "unknown family exits 2");
  REQUIRE(run("simulate --family delta --out " + out_path("bad.csv").string() +
              " 2> /dev/null") == 2,
          "simulate refuses non-gaussian families");
  REQUIRE(run("simulate --t-burn 5 --t-max 5 --out " + out_path("bad.csv").string() +
              " 2> /dev/null") == 2,
          "empty averaging window exits 2");
  REQUIRE(run("thermo --coin no_such_coin.txt --out " + out_path("bad.csv").string() +
              " 2> /dev/null") == 2,
          "missing coin file exits 2");
  REQUIRE(run("thermo --sigma -1 --family gaussian --out " +
              out_path("bad.csv").string() + " 2> /dev/null") == 2,
          "negative sigma exits 2");
}

void validation_command() {
  begin_case("validate command");
  const auto log = out_path("validate.log");
  REQUIRE(run("validate --seed 5 > " + log.string() + " 2>&1") == 0,
          "validate exits 0");
  const std::string text = slurp(log);
  for (const char* suite : {"coin-spectral", "lattice", "grover2d",
                            "initial-conditions", "asymptotics", "thermo", "csv"})
    REQUIRE(text.find(std::string("[PASS] ") + suite) != std::string::npos,
            "suite " << suite << " reported PASS");
  REQUIRE(text.find("[FAIL]") == std::string::npos, "no suite failed");
}

void sweep_x_contract() {
  begin_case("sweep-x output contract");
  const auto out = out_path("sweep_x.csv");
  REQUIRE(run("sweep-x --samples 41 --out " + out.string()) == 0, "sweep-x exits 0");
  const Csv csv = parse_csv(out);
  REQUIRE(csv.header == std::vector<std::string>(
                            {"x", "lambda_1", "lambda_2", "lambda_3", "lambda_4", "T"}),
          "sweep-x header");
  REQUIRE(csv.rows.size() == 41u, "one row per sample");
  REQUIRE(has_comment(csv, "command = sweep-x"), "command comment");
  REQUIRE(has_comment(csv, "seed = 1"), "seed comment");
  REQUIRE_CLOSE(field(csv, 0, "x"), -1.0, 1e-15, "x starts at -1");
  REQUIRE_CLOSE(field(csv, 40, "x"), 1.0, 1e-15, "x ends at +1");
  REQUIRE(field(csv, 0, "T") == 0.0 && field(csv, 40, "T") == 0.0,
          "cold endpoints");
  // Row 10 sits at x = -0.5, inside the constant-temperature band.
  REQUIRE_CLOSE(field(csv, 10, "x"), -0.5, 1e-15, "plateau row abscissa");
  REQUIRE_CLOSE(field(csv, 10, "T"), 2.0 / std::log(2.0), 1e-12,
                "plateau temperature");
  // Weights in every row sum to one.
  for (size_t r = 0; r < csv.rows.size(); r += 8) {
    const double sum = field(csv, r, "lambda_1") + field(csv, r, "lambda_2") +
                       field(csv, r, "lambda_3") + field(csv, r, "lambda_4");
    REQUIRE_CLOSE(sum, 1.0, 1e-14, "row " << r << " weights sum to one");
  }
}

void bloch_map_contract() {
  begin_case("bloch-map output contract");
  const auto out = out_path("bloch_map.csv");
  REQUIRE(run("bloch-map --out " + out.string()) == 0, "bloch-map exits 0");
  const Csv csv = parse_csv(out);
  REQUIRE(csv.header == std::vector<std::string>({"gamma", "phi", "x", "T"}),
          "bloch-map header");
  REQUIRE(csv.rows.size() == 90u * 180u, "full-resolution chart");
}

void sweep_gamma_contract() {
  begin_case("sweep-gamma output contract");
  const auto out = out_path("sweep_gamma.csv");
  REQUIRE(run("sweep-gamma --grid-m 32 --samples 9 --out " + out.string()) == 0,
          "sweep-gamma exits 0");
  const Csv csv = parse_csv(out);
  REQUIRE(csv.header == std::vector<std::string>(
                            {"gamma", "T_formula", "T_oracle", "abs_delta"}),
          "sweep-gamma header");
  REQUIRE(csv.rows.size() == 9u, "one row per sample");
  REQUIRE(has_comment(csv, "branch-order = grover"),
          "branch-order convention recorded");
  // gamma = 0: both readings are cold and agree.
  REQUIRE(field(csv, 0, "T_formula") == 0.0 && field(csv, 0, "T_oracle") == 0.0 &&
              field(csv, 0, "abs_delta") == 0.0,
          "cold fixed point");
  // gamma = pi/2: the density is maximally mixed, the oracle reads +inf.
  REQUIRE(std::isinf(field(csv, 4, "T_oracle")), "hot fixed point oracle");
  // gamma = pi: the two readings disagree; the discrepancy column is live.
  REQUIRE_CLOSE(field(csv, 8, "T_oracle"), 1.5415370006634594, 1e-3,
                "oracle temperature at gamma = pi");
  REQUIRE(field(csv, 8, "abs_delta") > 0.3, "printed/oracle discrepancy recorded");
}

void thermo_delta_contract() {
  begin_case("thermo delta output");
  // Diabolical point (default k0 = origin) with the default approach angle:
  // the row must reproduce the closed weight quadruple.
  const auto out = out_path("thermo_delta.csv");
  REQUIRE(run("thermo --gamma 1.0 --phi 2.0 --out " + out.string()) == 0,
          "thermo exits 0");
  const Csv csv = parse_csv(out);
  auto quad = diabolical_lambdas(1.0, 2.0, kPi);
  std::sort(quad.begin(), quad.end());
  for (int s = 0; s < 4; ++s)
    REQUIRE_CLOSE(field(csv, 0, "lambda_" + std::to_string(s + 1)),
                  quad[static_cast<size_t>(s)], 1e-15, "weight column " << s + 1);
  REQUIRE_CLOSE(field(csv, 0, "T"), diabolical_temperature(1.0, 2.0, kPi), 1e-15,
                "temperature column");
  const ThermoReport report = thermo_report(
      LambdaSpectrum{{quad.begin(), quad.end()}, Mat()});
  REQUIRE_CLOSE(field(csv, 0, "S"), report.entropy, 1e-15, "entropy column");
  REQUIRE_CLOSE(field(csv, 0, "eps_1"), 1.0, 1e-12, "highest energy level");
  REQUIRE_CLOSE(field(csv, 0, "eps_4"), -1.0, 1e-12, "lowest energy level");

  // Away from the diabolical point the limit is angle-free.
  const auto out2 = out_path("thermo_delta_k.csv");
  REQUIRE(run("thermo --k0 0.9,-0.4 --gamma 1.0 --phi 2.0 --out " + out2.string()) == 0,
          "thermo with k0 exits 0");
  const Csv csv2 = parse_csv(out2);
  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  DeltaLimit limit = delta_limit_lambdas(coin, MomentumVector{0.9, -0.4},
                                         BlochPoint(1.0, 2.0));
  std::sort(limit.lambdas.begin(), limit.lambdas.end());
  for (int s = 0; s < 4; ++s)
    REQUIRE_CLOSE(field(csv2, 0, "lambda_" + std::to_string(s + 1)),
                  limit.lambdas[static_cast<size_t>(s)], 1e-15,
                  "regular-point weight column " << s + 1);
}

void thermo_family_sentinels() {
  begin_case("thermo family sentinels");
  // Family I at gamma = 0 has a dark branch: T = 0 and undefined levels.
  const auto out = out_path("thermo_family1.csv");
  REQUIRE(run("thermo --family nonseparable-1 --grid-m 32 --out " + out.string()) == 0,
          "thermo family exits 0");
  const Csv csv = parse_csv(out);
  REQUIRE(field(csv, 0, "T") == 0.0, "dark branch reads T = 0");
  REQUIRE(std::isnan(field(csv, 0, "eps_1")) && std::isnan(field(csv, 0, "Z")),
          "undefined level quantities are nan tokens");
  REQUIRE(field(csv, 0, "S") > 0.0, "entropy still defined");
}

void coin_file_loading() {
  begin_case("coin file loading");
  const double h = 1.0 / std::sqrt(2.0);
  const auto good = out_path("hadamard.coin");
  {
    std::ofstream f(good);
    f.precision(17);  // entries must survive the 1e-12 unitarity gate
    f << "1\n";
    f << h << " 0  " << h << " 0\n";
    f << h << " 0  " << -h << " 0\n";
  }
  const auto out = out_path("thermo_hadamard.csv");
  REQUIRE(run("thermo --coin " + good.string() + " --k0 0.7 --gamma 0.5 --phi 0.25 --out " +
              out.string()) == 0,
          "1D coin accepted");
  const Csv csv = parse_csv(out);
  REQUIRE(csv.header.size() == 6u + 2u + 2u, "1D report has two branches");
  REQUIRE_CLOSE(field(csv, 0, "lambda_1") + field(csv, 0, "lambda_2"), 1.0, 1e-12,
                "weights sum to one");

  const auto bad = out_path("skewed.coin");
  {
    std::ofstream f(bad);
    f << "1\n0.9 0 0.1 0\n0.1 0 0.9 0\n";
  }
  REQUIRE(run("thermo --coin " + bad.string() + " --out " + out.string() +
              " 2> /dev/null") == 2,
          "non-unitary coin file exits 2");
}

void config_precedence() {
  begin_case("config file precedence");
  const auto cfg = out_path("run.cfg");
  const auto from_file = out_path("from_file.csv");
  {
    std::ofstream f(cfg);
    f << "# sweep configuration\n";
    f << "gamma = 0.4\n";
    f << "samples = 5\n";
    f << "out = " << from_file.string() << "\n";
  }
  REQUIRE(run("sweep-x --config " + cfg.string() + " --gamma 1.2") == 0,
          "config-driven run exits 0");
  const Csv csv = parse_csv(from_file);  // `out` came from the file
  REQUIRE(csv.rows.size() == 5u, "samples taken from the file");
  REQUIRE(has_comment(csv, "gamma = 1.2"), "explicit flag beats the file value");

  const auto broken = out_path("broken.cfg");
  {
    std::ofstream f(broken);
    f << "no_such_key = 1\n";
  }
  REQUIRE(run("sweep-x --config " + broken.string() + " 2> /dev/null") == 2,
          "unknown config key exits 2");
  {
    std::ofstream f(broken);
    f << "gamma 0.4\n";
  }
  REQUIRE(run("sweep-x --config " + broken.string() + " 2> /dev/null") == 2,
          "malformed config line exits 2");
  REQUIRE(run("sweep-x --config " + out_path("absent.cfg").string() +
              " 2> /dev/null") == 2,
          "missing config file exits 2");
}

void simulate_contract() {
  begin_case("simulate output contract");
  const auto out = out_path("simulate.csv");
  REQUIRE(run("simulate --family gaussian --sigma 1 --k0 0.5,0.3 --t-max 6 "
              "--t-burn 2 --grid-m 16 --out " +
              out.string()) == 0,
          "simulate exits 0");
  const Csv csv = parse_csv(out);
  REQUIRE(csv.header == std::vector<std::string>({"t", "entropy", "mean_distance"}),
          "simulate header");
  REQUIRE(csv.rows.size() == 7u, "rows t = 0..t_max");
  for (size_t t = 0; t <= 6; ++t) {
    REQUIRE_CLOSE(field(csv, t, "t"), static_cast<double>(t), 1e-15, "time column");
    const double s = field(csv, t, "entropy");
    REQUIRE(s >= -1e-12 && s <= std::log(4.0) + 1e-12, "entropy within [0, ln 4]");
    const double d = field(csv, t, "mean_distance");
    if (t <= 2)
      REQUIRE(std::isnan(d), "distance undefined during burn-in");
    else
      REQUIRE(std::isfinite(d) && d >= 0.0, "distance live after burn-in");
  }
}

void thread_count_determinism() {
  begin_case("bitwise determinism across thread counts");
  const auto a = out_path("det_a.csv"), b = out_path("det_b.csv");
  REQUIRE(run("sweep-gamma --grid-m 32 --samples 9 --out " + a.string() +
              " > /dev/null 2>&1 ") == 0,
          "first run exits 0");
  const int rc = std::system(("OMP_NUM_THREADS=3 \"" + g_cli +
                              "\" sweep-gamma --grid-m 32 --samples 9 --out " +
                              b.string())
                                 .c_str());
  REQUIRE(WIFEXITED(rc) && WEXITSTATUS(rc) == 0, "three-thread run exits 0");
  REQUIRE(slurp(a) == slurp(b), "outputs byte-identical across thread counts");
}

}  // namespace

int main(int argc, char** argv) {
  REQUIRE(argc >= 2, "usage: test_cli <path-to-cli-binary>");
  g_cli = argv[1];
  g_dir = std::filesystem::absolute("cli_scratch");
  std::filesystem::create_directories(g_dir);

  exit_codes();
  validation_command();
  sweep_x_contract();
  bloch_map_contract();
  sweep_gamma_contract();
  thermo_delta_contract();
  thermo_family_sentinels();
  coin_file_loading();
  thread_count_determinism();
  config_precedence();
  simulate_contract();
  test_support::all_passed("test_cli");
  return 0;
}
