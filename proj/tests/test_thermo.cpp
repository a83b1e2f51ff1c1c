// =============================================================================
// test_thermo.cpp
// The canonical-ensemble reading of a spectrum: the worked reference
// example, the defining identities on random spectra, the degenerate
// sentinels, and the Bloch-sphere average.
// =============================================================================
#include "qwalk/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwalk/grover2d.hpp"
#include "qwalk/validate.hpp"
#include "test_support.hpp"

using namespace qwalk;
using test_support::begin_case;

namespace {

constexpr double kLog2 = 0.6931471805599453;

LambdaSpectrum make_spectrum(std::vector<double> values) {
  LambdaSpectrum s;
  s.values = std::move(values);
  return s;
}

void worked_example() {
  begin_case("worked reference example");
  // Lambda = (1/8, 1/8, 1/4, 1/2): T = 2/ln 4, eps = (1, 1, 0, -1),
  // Z = 4, A = -2, U = -1/4, S = (7/4) ln 2.
  const ThermoReport report =
      thermo_report(make_spectrum({0.125, 0.125, 0.25, 0.5}));
  REQUIRE_CLOSE(report.temperature, 1.0 / kLog2, 1e-15, "temperature 2/ln 4");
  REQUIRE_CLOSE(report.beta, kLog2, 1e-15, "beta = ln 2");
  const double want_eps[4] = {1.0, 1.0, 0.0, -1.0};
  for (int s = 0; s < 4; ++s)
    REQUIRE_CLOSE(report.epsilons[static_cast<size_t>(s)], want_eps[s], 1e-14,
                  "energy level " << s);
  REQUIRE_CLOSE(report.partition_function, 4.0, 1e-14, "Z = 4");
  REQUIRE_CLOSE(report.helmholtz, -2.0, 1e-13, "A = -2");
  REQUIRE_CLOSE(report.internal_energy, -0.25, 1e-14, "U = -1/4");
  REQUIRE_CLOSE(report.entropy, 1.75 * kLog2, 1e-14, "S = (7/4) ln 2");
}

void defining_identities() {
  begin_case("defining identities on random spectra");
  Rng rng(91);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.uniform(1.0, 4.0)));  // 4, 6, 8
    std::vector<double> values(static_cast<size_t>(n));
    double total = 0.0;
    for (double& v : values) {
      v = std::exp(rng.uniform(-4.0, 0.0));
      total += v;
    }
    for (double& v : values) v /= total;
    std::sort(values.begin(), values.end());
    if (values.back() - values.front() <= 1e-6) continue;  // stay off the sentinels
    const ThermoReport report = thermo_report(make_spectrum(values));

    REQUIRE_CLOSE(report.epsilons.front(), 1.0, 1e-12, "eps_1 = +1");
    REQUIRE_CLOSE(report.epsilons.back(), -1.0, 1e-12, "eps_2N = -1");
    // Boltzmann reconstruction: e^{-beta eps_s} / Z = Lambda_s.
    for (size_t s = 0; s < values.size(); ++s) {
      const double rebuilt =
          std::exp(-report.beta * report.epsilons[s]) / report.partition_function;
      REQUIRE_CLOSE(rebuilt, values[s], 1e-12, "Boltzmann reconstruction");
    }
    REQUIRE_CLOSE(report.entropy, report.beta * (report.internal_energy - report.helmholtz),
                  1e-12, "S = beta (U - A)");
    REQUIRE(report.entropy >= -1e-15 &&
                report.entropy <= std::log(static_cast<double>(n)) + 1e-15,
            "entropy within [0, ln 2N]");
  }
}

void sentinels() {
  begin_case("degenerate sentinels");
  // Uniform spectrum: infinite temperature.
  const ThermoReport hot = thermo_report(make_spectrum({0.25, 0.25, 0.25, 0.25}));
  REQUIRE(std::isinf(hot.temperature) && hot.temperature > 0, "uniform -> T = +inf");
  REQUIRE(hot.beta == 0.0, "beta = 0");
  for (const double e : hot.epsilons) REQUIRE(e == 0.0, "eps = 0");
  REQUIRE(hot.partition_function == 4.0, "Z = 2N");
  REQUIRE(std::isinf(hot.helmholtz) && hot.helmholtz < 0, "A = -inf");
  REQUIRE(hot.internal_energy == 0.0, "U = 0");
  REQUIRE_CLOSE(hot.entropy, std::log(4.0), 1e-15, "S = ln 2N");

  // Zero eigenvalue: zero temperature, energies undefined.
  const ThermoReport cold = thermo_report(make_spectrum({0.0, 0.1, 0.4, 0.5}));
  REQUIRE(cold.temperature == 0.0, "zero eigenvalue -> T = 0");
  REQUIRE(std::isinf(cold.beta) && cold.beta > 0, "beta = +inf");
  for (const double e : cold.epsilons) REQUIRE(std::isnan(e), "eps undefined");
  REQUIRE(std::isnan(cold.partition_function) && std::isnan(cold.helmholtz) &&
              std::isnan(cold.internal_energy),
          "Z, A, U undefined");
  const double want_s = -(0.1 * std::log(0.1) + 0.4 * std::log(0.4) + 0.5 * std::log(0.5));
  REQUIRE_CLOSE(cold.entropy, want_s, 1e-15, "S still defined with 0 ln 0 = 0");

  // The window constants decide the branches.
  REQUIRE(std::isinf(temperature(make_spectrum({0.25 - 2e-13, 0.25, 0.25, 0.25 + 2e-13}))),
          "sub-window spread reads as uniform");
  REQUIRE(temperature(make_spectrum({5e-13, 0.2, 0.3, 0.4999999999995})) == 0.0,
          "sub-window floor reads as zero");

  REQUIRE_THROWS_AS(energy_levels(make_spectrum({0.25, 0.25, 0.25, 0.25})),
                    degeneracy_error, "energy levels refuse a uniform spectrum");
  REQUIRE_THROWS_AS(energy_levels(make_spectrum({0.0, 0.5, 0.2, 0.3})),
                    invalid_input_error, "unsorted spectrum rejected");
  REQUIRE_THROWS_AS(thermo_report(make_spectrum({})), invalid_input_error,
                    "empty spectrum rejected");
  REQUIRE_THROWS_AS(thermo_report(make_spectrum({-0.1, 0.5, 0.6})), invalid_input_error,
                    "negative weight rejected");
}

void bloch_average() {
  begin_case("Bloch-sphere average");
  REQUIRE_THROWS_AS(
      bloch_average_lambdas([](double, double) { return std::vector<double>{1.0}; }, 3),
      invalid_input_error, "resolution below 4 rejected");
  // Averaging the diabolical quadruple over the sphere: <x> = 0, so the
  // family-order average is (1/2, (1+s)/4, (1-s)/8, (1-s)/8) at s = sin 2th.
  const double theta = kPi;
  const BlochAverage avg = bloch_average_lambdas(
      [theta](double gamma, double phi) {
        const auto lam = diabolical_lambdas(gamma, phi, theta);
        return std::vector<double>(lam.begin(), lam.end());
      },
      24);
  REQUIRE_CLOSE(avg.averaged[0], 0.5, 1e-12, "averaged hot branch = 1/2");
  REQUIRE_CLOSE(avg.averaged[1], 0.25, 1e-12, "averaged second branch = 1/4");
  REQUIRE_CLOSE(avg.averaged[2], 0.125, 1e-12, "averaged cold pair = 1/8");
  REQUIRE_CLOSE(avg.averaged[3], 0.125, 1e-12, "averaged cold pair = 1/8");
  double total = 0.0;
  for (const double l : avg.averaged) total += l;
  REQUIRE_CLOSE(total, 1.0, 1e-13, "average conserves the trace");
  // The report sorts ascending; its temperature is 2/ln(max/min) = 1/ln 2.
  REQUIRE(std::is_sorted(avg.report.lambdas.values.begin(),
                         avg.report.lambdas.values.end()),
          "report spectrum ascending");
  REQUIRE_CLOSE(avg.report.temperature, 1.0 / kLog2, 1e-12,
                "averaged-spectrum temperature");
}

}  // namespace

int main() {
  worked_example();
  defining_identities();
  sentinels();
  bloch_average();
  test_support::all_passed("test_thermo");
  return 0;
}
