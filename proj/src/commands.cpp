// =============================================================================
// commands.cpp
// The library side of the CLI subcommands (see commands.hpp).
// =============================================================================
#include "qwalk/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "qwalk/asymptotics.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/grover2d.hpp"
#include "qwalk/initial_conditions.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/thermo.hpp"
#include "qwalk/validate.hpp"

namespace qwalk {

namespace {

// ---------------------------------------------------------------------------
// Config plumbing
// ---------------------------------------------------------------------------

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw invalid_input_error("malformed number '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
      ++used;
    if (used != item.size())
      throw invalid_input_error("malformed number '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw invalid_input_error("empty number list");
  return values;
}

template <class T>
T parse_scalar(const std::string& text, const char* kind) {
  std::stringstream stream(text);
  T value;
  stream >> value;
  if (stream.fail() || !(stream >> std::ws).eof())
    throw invalid_input_error("malformed " + std::string(kind) + " '" + text + "'");
  return value;
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input_error("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trimmed(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw invalid_input_error("config line " + std::to_string(lineno) +
                                ": expected key=value");
    const std::string key = trimmed(stripped.substr(0, eq));
    const std::string value = trimmed(stripped.substr(eq + 1));
    try {
      if (key == "coin") cfg.coin = value;
      else if (key == "p") cfg.p = parse_scalar<double>(value, "number");
      else if (key == "family") cfg.family = value;
      else if (key == "gamma") cfg.gamma = parse_scalar<double>(value, "number");
      else if (key == "phi") cfg.phi = parse_scalar<double>(value, "number");
      else if (key == "theta") cfg.theta = parse_scalar<double>(value, "number");
      else if (key == "sigma") cfg.sigma = parse_scalar<double>(value, "number");
      else if (key == "k0") cfg.k0 = parse_double_list(value);
      else if (key == "grid-m") cfg.grid_m = parse_scalar<int>(value, "integer");
      else if (key == "t-max") cfg.t_max = parse_scalar<long>(value, "integer");
      else if (key == "t-burn") cfg.t_burn = parse_scalar<long>(value, "integer");
      else if (key == "samples") cfg.samples = parse_scalar<int>(value, "integer");
      else if (key == "out") cfg.out = value;
      else if (key == "seed") cfg.seed = parse_scalar<unsigned long long>(value, "integer");
      else throw invalid_input_error("unknown key '" + key + "'");
    } catch (const invalid_input_error& e) {
      throw invalid_input_error("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

namespace {

// ---------------------------------------------------------------------------
// Shared command helpers
// ---------------------------------------------------------------------------

CoinMatrix load_coin(const RunConfig& cfg) {
  if (cfg.coin == "grover") return grover_coin(GroverParams(cfg.p));
  std::ifstream in(cfg.coin);
  if (!in) throw invalid_input_error("cannot open coin file '" + cfg.coin + "'");
  int n = 0;
  if (!(in >> n) || n < 1)
    throw invalid_input_error("coin file must start with the dimension N");
  Mat entries(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = 0; c < 2 * n; ++c) {
      double re, im;
      if (!(in >> re >> im))
        throw invalid_input_error("coin file ended before 2N x 2N re/im pairs");
      entries(r, c) = Cx(re, im);
    }
  return CoinMatrix(n, entries);  // validates unitarity
}

MomentumVector resolve_k0(const RunConfig& cfg, int dim_n) {
  if (cfg.k0.empty()) return MomentumVector(RVec::Zero(dim_n));
  if (static_cast<int>(cfg.k0.size()) != dim_n)
    throw invalid_input_error("k0 must have one component per lattice axis");
  RVec k(dim_n);
  for (int a = 0; a < dim_n; ++a) k[a] = cfg.k0[static_cast<size_t>(a)];
  return MomentumVector(std::move(k));
}

bool is_grover_half(const CoinMatrix& coin) {
  return coin.dim_n() == 2 &&
         (coin.entries() - grover_coin(GroverParams(0.5)).entries())
                 .cwiseAbs()
                 .maxCoeff() <= 1e-12;
}

// The resolved-configuration comment block written at the top of every CSV.
// Fixed key order, deterministic number formatting, and no run environment
// (threads, timestamps) so outputs stay byte-reproducible.
void write_config_comments(CsvWriter& writer, const RunConfig& cfg,
                           const char* branch_order) {
  writer.comment("command = " + cfg.command);
  writer.comment("coin = " + cfg.coin);
  writer.comment("p = " + csv_token(cfg.p));
  writer.comment("family = " + cfg.family);
  writer.comment("gamma = " + csv_token(cfg.gamma));
  writer.comment("phi = " + csv_token(cfg.phi));
  writer.comment("theta = " + csv_token(cfg.theta));
  writer.comment("sigma = " + csv_token(cfg.sigma));
  std::string k0 = "k0 =";
  if (cfg.k0.empty()) {
    k0 += " origin";
  } else {
    for (size_t a = 0; a < cfg.k0.size(); ++a)
      k0 += std::string(a ? "," : " ") + csv_token(cfg.k0[a]);
  }
  writer.comment(k0);
  writer.comment("grid-m = " + std::to_string(cfg.grid_m));
  writer.comment("t-max = " + std::to_string(cfg.t_max));
  writer.comment("t-burn = " + std::to_string(cfg.t_burn));
  writer.comment("samples = " + std::to_string(cfg.samples));
  writer.comment("seed = " + std::to_string(cfg.seed));
  writer.comment(std::string("branch-order = ") + branch_order);
}

// Exit-code boundary: precondition problems are 2, numerical trouble is 3.
int guard(const std::function<int()>& body) {
  try {
    return body();
  } catch (const invalid_input_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const branch_singularity_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const degeneracy_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

std::vector<std::string> lambda_eps_columns(int nc) {
  std::vector<std::string> columns = {"T", "beta", "Z", "A", "U", "S"};
  for (int s = 1; s <= nc; ++s) columns.push_back("lambda_" + std::to_string(s));
  for (int s = 1; s <= nc; ++s) columns.push_back("eps_" + std::to_string(s));
  return columns;
}

std::vector<double> lambda_eps_row(const ThermoReport& report) {
  std::vector<double> row = {report.temperature,     report.beta,
                             report.partition_function, report.helmholtz,
                             report.internal_energy, report.entropy};
  row.insert(row.end(), report.lambdas.values.begin(), report.lambdas.values.end());
  row.insert(row.end(), report.epsilons.begin(), report.epsilons.end());
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_sweep_x(const RunConfig& cfg) {
  return guard([&] {
    if (cfg.samples < 2) throw invalid_input_error("sweep-x needs at least 2 samples");
    CsvWriter writer(cfg.out);
    write_config_comments(writer, cfg, "grover");
    writer.header({"x", "lambda_1", "lambda_2", "lambda_3", "lambda_4", "T"});
    for (int i = 0; i < cfg.samples; ++i) {
      const double x = -1.0 + 2.0 * static_cast<double>(i) / (cfg.samples - 1);
      const auto lam = diabolical_lambdas_from_x(x, cfg.theta);
      const auto [lo, hi] = std::minmax_element(lam.begin(), lam.end());
      writer.row({x, lam[0], lam[1], lam[2], lam[3], spectrum_temperature(*lo, *hi)});
    }
    writer.close();
    return 0;
  });
}

int cmd_bloch_map(const RunConfig& cfg) {
  return guard([&] {
    CsvWriter writer(cfg.out);
    write_config_comments(writer, cfg, "grover");
    writer.header({"gamma", "phi", "x", "T"});
    for (const BlochSample& sample : bloch_isotherm_map(90, 180))
      writer.row({sample.gamma, sample.phi, sample.x, sample.temperature});
    writer.close();
    return 0;
  });
}

int cmd_sweep_gamma(const RunConfig& cfg) {
  return guard([&] {
    if (cfg.samples < 2)
      throw invalid_input_error("sweep-gamma needs at least 2 samples");
    const CoinMatrix coin = grover_coin(GroverParams(0.5));
    const QuadratureGrid grid(2, cfg.grid_m);
    const BundleProvider provider(coin);

    // The family coefficients are k-independent, so the density is an exact
    // combination of two gamma-independent projector integrals:
    //   rho(gamma) = cos^2(g/2)/2 * int (P1 + P2) + sin^2(g/2)/2 * int (P3 + P4).
    // One grid pass serves every sample.
    struct GroupIntegrals {
      Mat low = Mat::Zero(4, 4);
      Mat high = Mat::Zero(4, 4);
    };
    const double w = grid.node_weight();
    const GroupIntegrals integrals = blocked_reduce<GroupIntegrals>(
        grid.total_nodes(), GroupIntegrals{},
        [&](long j, GroupIntegrals& acc) {
          const SpectralBundle bundle = provider.at(grid.node_k(j));
          for (int s = 0; s < 4; ++s) {
            const Vec v = bundle.vectors.col(s);
            Mat& target = (s < 2) ? acc.low : acc.high;
            for (int r = 0; r < 4; ++r)
              for (int c = 0; c < 4; ++c)
                target(r, c) += w * (v[r] * std::conj(v[c]));
          }
        },
        [](GroupIntegrals& into, const GroupIntegrals& part) {
          into.low += part.low;
          into.high += part.high;
        });

    CsvWriter writer(cfg.out);
    write_config_comments(writer, cfg, provider.branch_order_name());
    writer.header({"gamma", "T_formula", "T_oracle", "abs_delta"});
    for (int i = 0; i < cfg.samples; ++i) {
      const double gamma = kPi * static_cast<double>(i) / (cfg.samples - 1);
      const double u = 0.5 * std::pow(std::cos(0.5 * gamma), 2);
      const double v = 0.5 * std::pow(std::sin(0.5 * gamma), 2);
      const Mat rho = u * integrals.low + v * integrals.high;
      const LambdaSpectrum spectrum = lambda_spectrum(rho);
      const double oracle =
          spectrum_temperature(spectrum.values.front(), spectrum.values.back());

      const double num = 1.0 + (4.0 / kPi - 1.0) * std::cos(gamma);
      const double den = 1.0 - std::cos(gamma);
      double formula;
      if (den <= 0.0) {
        formula = 0.0;
      } else {
        const double l = std::abs(std::log(num / den));
        formula = (l == 0.0) ? std::numeric_limits<double>::infinity() : 2.0 / l;
      }
      const double delta = (std::isinf(formula) && std::isinf(oracle))
                               ? 0.0
                               : std::abs(formula - oracle);
      writer.row({gamma, formula, oracle, delta});
    }
    writer.close();
    return 0;
  });
}

int cmd_thermo(const RunConfig& cfg) {
  return guard([&] {
    const CoinMatrix coin = load_coin(cfg);
    const BlochPoint bloch(cfg.gamma, cfg.phi);
    const BundleProvider provider(coin);

    LambdaSpectrum spectrum;
    if (cfg.family == "delta") {
      const MomentumVector k0 = resolve_k0(cfg, coin.dim_n());
      // The approach angle only has meaning at the degenerate point of the
      // p = 1/2 Grover walk; elsewhere the plain limit is well defined.
      const bool diabolical =
          is_grover_half(coin) && std::hypot(k0[0], k0[1]) <= 1e-6;
      const DeltaLimit limit =
          diabolical ? delta_limit_lambdas(coin, k0, bloch, cfg.theta)
                     : delta_limit_lambdas(coin, k0, bloch);
      spectrum.values = limit.lambdas;
      std::sort(spectrum.values.begin(), spectrum.values.end());
    } else if (cfg.family == "gaussian") {
      const MomentumVector k0 = resolve_k0(cfg, coin.dim_n());
      std::vector<double> k0v(k0.components().data(),
                              k0.components().data() + k0.dim());
      const QuadratureGrid grid(coin.dim_n(), cfg.grid_m);
      spectrum = lambda_spectrum(asymptotic_density(
          AsymptoticIC::gaussian(cfg.sigma, k0v, bloch), coin, grid));
    } else if (cfg.family == "nonseparable-1" || cfg.family == "nonseparable-2") {
      const QuadratureGrid grid(coin.dim_n(), cfg.grid_m);
      const NonSeparableFamily family = (cfg.family == "nonseparable-1")
                                            ? NonSeparableFamily::I
                                            : NonSeparableFamily::II;
      spectrum = lambda_spectrum(
          asymptotic_density(AsymptoticIC::nonseparable(family, bloch), coin, grid));
    } else {
      throw invalid_input_error("unknown family '" + cfg.family +
                                "' (delta | gaussian | nonseparable-1 | nonseparable-2)");
    }

    const ThermoReport report = thermo_report(spectrum);
    CsvWriter writer(cfg.out);
    write_config_comments(writer, cfg, provider.branch_order_name());
    writer.header(lambda_eps_columns(coin.size()));
    writer.row(lambda_eps_row(report));
    writer.close();
    return 0;
  });
}

int cmd_simulate(const RunConfig& cfg) {
  return guard([&] {
    if (cfg.family != "gaussian")
      throw invalid_input_error("simulate only evolves the gaussian family");
    if (cfg.t_burn < 0 || cfg.t_max <= cfg.t_burn)
      throw invalid_input_error("simulate needs 0 <= t-burn < t-max");
    const CoinMatrix coin = load_coin(cfg);
    const BlochPoint bloch(cfg.gamma, cfg.phi);
    const MomentumVector k0 = resolve_k0(cfg, coin.dim_n());
    const BundleProvider provider(coin);

    const SeparableGaussianIC ic(cfg.sigma, k0, bloch);
    const long window = static_cast<long>(std::ceil(8.0 * cfg.sigma));
    WalkerState state = gaussian_position_amplitudes(ic, window);

    std::vector<double> k0v(k0.components().data(),
                            k0.components().data() + k0.dim());
    const QuadratureGrid grid(coin.dim_n(), cfg.grid_m);
    const Mat target = asymptotic_density(
        AsymptoticIC::gaussian(cfg.sigma, k0v, bloch), coin, grid);

    CsvWriter writer(cfg.out);
    write_config_comments(writer, cfg, provider.branch_order_name());
    writer.header({"t", "entropy", "mean_distance"});

    Mat mean_acc = Mat::Zero(coin.size(), coin.size());
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (long t = 0; t <= cfg.t_max; ++t) {
      if (t > 0) {
        state = step(state, coin);
        state.prune();
      }
      const Mat rho = reduced_density(state);
      const double s = entropy(lambda_spectrum(rho));
      double distance = nan;
      if (t > cfg.t_burn) {
        mean_acc += rho;
        const Mat mean = mean_acc / static_cast<double>(t - cfg.t_burn);
        distance = (mean - target).cwiseAbs().maxCoeff();
      }
      writer.row({static_cast<double>(t), s, distance});
    }
    writer.close();
    return 0;
  });
}

int cmd_validate(const RunConfig& cfg) {
  return guard([&] {
    const std::vector<SuiteResult> results = run_validation_suites(cfg.seed);
    bool all = true;
    for (const SuiteResult& r : results) {
      std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.c_str());
      all = all && r.passed;
    }
    return all ? 0 : 1;
  });
}

int run_command(const RunConfig& cfg) {
  if (cfg.command == "sweep-x") return cmd_sweep_x(cfg);
  if (cfg.command == "bloch-map") return cmd_bloch_map(cfg);
  if (cfg.command == "sweep-gamma") return cmd_sweep_gamma(cfg);
  if (cfg.command == "thermo") return cmd_thermo(cfg);
  if (cfg.command == "simulate") return cmd_simulate(cfg);
  if (cfg.command == "validate") return cmd_validate(cfg);
  std::fprintf(stderr, "error: unknown command '%s'\n", cfg.command.c_str());
  return 2;
}

}  // namespace qwalk
