// =============================================================================
// commands.hpp
// The command layer behind the CLI: every subcommand is a library function
// taking a fully resolved RunConfig and returning a process exit code
// (0 success, 1 validation failure, 2 invalid config, 3 numerical failure).
// The CLI executable only parses flags/config files into a RunConfig and
// dispatches here; tests drive the same functions directly.
// =============================================================================
#pragma once

#include <string>
#include <vector>

namespace qwalk {

struct RunConfig {
  std::string command;

  // Coin selection: the built-in Grover family or a text file holding a
  // 2N x 2N unitary (whitespace-separated "re im" entry pairs, row-major,
  // first line N).
  std::string coin = "grover";
  double p = 0.5;

  // Initial-condition family: delta | gaussian | nonseparable-1 | nonseparable-2.
  std::string family = "delta";
  double gamma = 0.0;
  double phi = 0.0;
  double theta = 3.141592653589793238462643383279502884;  // approach angle
  double sigma = 6.0;
  std::vector<double> k0;  // defaults to the origin at the coin's dimension

  int grid_m = 256;
  long t_max = 400;
  long t_burn = 100;
  int samples = 201;

  std::string out = "out.csv";
  unsigned long long seed = 1;
};

// Parses "key=value" lines ('#' comments, blank lines ignored) into cfg;
// keys match the CLI flag names without the leading dashes. Unknown keys or
// malformed values throw invalid_input_error.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Fig. candidates --------------------------------------------------------

// x, Lambda1..Lambda4 (formula index), T at theta fixed; x uniform on [-1,1].
int cmd_sweep_x(const RunConfig& cfg);

// gamma, phi, x, T over the Bloch sphere at theta = pi (90 x 180 grid).
int cmd_bloch_map(const RunConfig& cfg);

// gamma, T_printed_formula, T_oracle, abs_delta for the non-separable
// family I; quantifies the printed-formula discrepancy along gamma.
int cmd_sweep_gamma(const RunConfig& cfg);

// One ThermoReport row for the configured (coin, initial condition).
int cmd_thermo(const RunConfig& cfg);

// Lattice time series: t, entropy of rho_c(t), max-abs distance of the
// running time average (over (t_burn, t]) from the quadrature asymptote.
int cmd_simulate(const RunConfig& cfg);

// Runs every module's randomized invariant suite with cfg.seed.
int cmd_validate(const RunConfig& cfg);

// Dispatch by cfg.command; unknown command -> exit code 2.
int run_command(const RunConfig& cfg);

}  // namespace qwalk
