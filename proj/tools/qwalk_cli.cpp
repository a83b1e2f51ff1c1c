// =============================================================================
// qwalk_cli.cpp
// Command-line front end: parses flags (and an optional key=value config
// file) into a RunConfig and dispatches to the command layer. Angles are in
// radians throughout.
// =============================================================================
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "qwalk/commands.hpp"
#include "qwalk/types.hpp"

namespace {

struct FlagBinding {
  std::string flag;
  std::function<void(qwalk::RunConfig&, const qwalk::RunConfig&)> copy;
};

// Attaches the full option set to one subcommand. Every subcommand accepts
// every option so a config file can be shared across commands; each command
// reads only what it needs.
void attach_options(CLI::App* cmd, qwalk::RunConfig& cfg, std::string& config_path,
                    std::vector<FlagBinding>& bindings) {
  using qwalk::RunConfig;
  cmd->add_option("--config", config_path,
                  "key=value config file; explicit flags take precedence");
  cmd->add_option("--coin", cfg.coin,
                  "'grover' or a path to a 2N x 2N unitary (first line N, then re im pairs)");
  cmd->add_option("--p", cfg.p, "Grover family parameter p in [0,1] (default 0.5)");
  cmd->add_option("--family", cfg.family,
                  "initial condition: delta | gaussian | nonseparable-1 | nonseparable-2");
  cmd->add_option("--gamma", cfg.gamma, "Bloch polar angle in [0,pi] (radians)");
  cmd->add_option("--phi", cfg.phi, "Bloch azimuth in [0,2pi) (radians)");
  cmd->add_option("--theta", cfg.theta,
                  "approach angle at the degenerate point in [0,2pi) (radians, default pi)");
  cmd->add_option("--sigma", cfg.sigma, "Gaussian packet width (default 6)");
  cmd->add_option("--k0", cfg.k0, "packet momentum, comma-separated components")
      ->delimiter(',');
  cmd->add_option("--grid-m", cfg.grid_m,
                  "quadrature points per axis, multiple of 4 (default 256)");
  cmd->add_option("--t-max", cfg.t_max, "evolution horizon (default 400)");
  cmd->add_option("--t-burn", cfg.t_burn, "time-average burn-in (default 100)");
  cmd->add_option("--samples", cfg.samples, "sweep sample count (default 201)");
  cmd->add_option("--out", cfg.out, "output CSV path (default out.csv)");
  cmd->add_option("--seed", cfg.seed, "validation RNG seed (default 1)");

  bindings = {
      {"--coin", [](RunConfig& a, const RunConfig& b) { a.coin = b.coin; }},
      {"--p", [](RunConfig& a, const RunConfig& b) { a.p = b.p; }},
      {"--family", [](RunConfig& a, const RunConfig& b) { a.family = b.family; }},
      {"--gamma", [](RunConfig& a, const RunConfig& b) { a.gamma = b.gamma; }},
      {"--phi", [](RunConfig& a, const RunConfig& b) { a.phi = b.phi; }},
      {"--theta", [](RunConfig& a, const RunConfig& b) { a.theta = b.theta; }},
      {"--sigma", [](RunConfig& a, const RunConfig& b) { a.sigma = b.sigma; }},
      {"--k0", [](RunConfig& a, const RunConfig& b) { a.k0 = b.k0; }},
      {"--grid-m", [](RunConfig& a, const RunConfig& b) { a.grid_m = b.grid_m; }},
      {"--t-max", [](RunConfig& a, const RunConfig& b) { a.t_max = b.t_max; }},
      {"--t-burn", [](RunConfig& a, const RunConfig& b) { a.t_burn = b.t_burn; }},
      {"--samples", [](RunConfig& a, const RunConfig& b) { a.samples = b.samples; }},
      {"--out", [](RunConfig& a, const RunConfig& b) { a.out = b.out; }},
      {"--seed", [](RunConfig& a, const RunConfig& b) { a.seed = b.seed; }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  Eigen::setNbThreads(1);  // all parallelism goes through the walk kernels

  CLI::App app{"Coined-quantum-walk entanglement thermodynamics toolkit"};
  app.require_subcommand(1);

  qwalk::RunConfig flags;  // receives command-line values
  std::string config_path;
  std::vector<FlagBinding> bindings;

  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"sweep-x", "asymptotic weights and temperature along the isotherm coordinate x"},
      {"bloch-map", "temperature map over the Bloch sphere of initial chirality states"},
      {"sweep-gamma", "family-I temperature along gamma: closed formula vs quadrature"},
      {"thermo", "full thermodynamic report for one configuration"},
      {"simulate", "direct lattice evolution against the asymptotic prediction"},
      {"validate", "randomized invariant suites for every module"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    attach_options(sub, flags, config_path, bindings);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits clean, parse failures are config errors
  }

  CLI::App* active = app.get_subcommands().front();

  qwalk::RunConfig cfg = flags;
  cfg.command = active->get_name();
  if (!config_path.empty()) {
    // Config file fills in every flag the command line left untouched.
    try {
      qwalk::RunConfig file_cfg;
      qwalk::apply_config_file(file_cfg, config_path);
      for (const FlagBinding& binding : bindings)
        if (active->count(binding.flag) == 0) binding.copy(cfg, file_cfg);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
  }
  return qwalk::run_command(cfg);
}
