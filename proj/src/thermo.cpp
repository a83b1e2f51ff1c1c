// =============================================================================
// thermo.cpp
// Canonical-ensemble quantities of an asymptotic spectrum.
// =============================================================================
#include "qwalk/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qwalk {

namespace {

void check_spectrum(const LambdaSpectrum& lambdas) {
  if (lambdas.values.empty())
    throw invalid_input_error("thermo: spectrum is empty");
  for (double v : lambdas.values)
    if (!(v >= 0.0)) throw invalid_input_error("thermo: spectrum has a negative entry");
  if (!std::is_sorted(lambdas.values.begin(), lambdas.values.end()))
    throw invalid_input_error("thermo: spectrum must be ascending");
}

}  // namespace

double temperature(const LambdaSpectrum& lambdas) {
  check_spectrum(lambdas);
  return spectrum_temperature(lambdas.values.front(), lambdas.values.back());
}

std::vector<double> energy_levels(const LambdaSpectrum& lambdas) {
  check_spectrum(lambdas);
  const double lo = lambdas.values.front(), hi = lambdas.values.back();
  if (hi - lo <= kSpectrumUniformTol)
    throw degeneracy_error("energy_levels: uniform spectrum has no level scale");
  if (lo <= kSpectrumZeroTol)
    throw degeneracy_error("energy_levels: zero eigenvalue sends a level to infinity");
  const double span = std::log(hi / lo);
  std::vector<double> eps(lambdas.values.size());
  for (size_t s = 0; s < eps.size(); ++s)
    eps[s] = 1.0 - 2.0 * std::log(lambdas.values[s] / lo) / span;
  return eps;
}

double partition_function(const std::vector<double>& epsilons, double beta) {
  double z = 0.0;
  for (double e : epsilons) z += std::exp(-beta * e);
  return z;
}

double helmholtz(double z, double beta) {
  if (!(z > 0.0)) throw invalid_input_error("helmholtz: partition function must be positive");
  if (beta == 0.0) return -std::numeric_limits<double>::infinity();
  return -std::log(z) / beta;
}

double internal_energy(const LambdaSpectrum& lambdas,
                       const std::vector<double>& epsilons) {
  if (lambdas.values.size() != epsilons.size())
    throw invalid_input_error("internal_energy: spectrum and levels differ in size");
  double u = 0.0;
  for (size_t s = 0; s < epsilons.size(); ++s)
    u += lambdas.values[s] * epsilons[s];
  return u;
}

double entropy(const LambdaSpectrum& lambdas) {
  check_spectrum(lambdas);
  double s = 0.0;
  for (double v : lambdas.values)
    if (v > 0.0) s -= v * std::log(v);  // 0 ln 0 = 0
  return s;
}

ThermoReport thermo_report(const LambdaSpectrum& lambdas) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const size_t nc = lambdas.values.size();

  ThermoReport report;
  report.lambdas = lambdas;
  report.temperature = temperature(lambdas);

  if (std::isinf(report.temperature)) {
    // Uniform spectrum: beta = 0 flattens the Boltzmann weights.
    report.beta = 0.0;
    report.epsilons.assign(nc, 0.0);
    report.partition_function = static_cast<double>(nc);
    report.helmholtz = -inf;
    report.internal_energy = 0.0;
    report.entropy = std::log(static_cast<double>(nc));
    return report;
  }
  if (report.temperature == 0.0) {
    // A zero eigenvalue: the level scale diverges and the canonical
    // quantities lose meaning; only the entropy of Lambda itself survives.
    report.beta = inf;
    report.epsilons.assign(nc, nan);
    report.partition_function = nan;
    report.helmholtz = nan;
    report.internal_energy = nan;
    report.entropy = entropy(lambdas);
    return report;
  }

  report.beta = 1.0 / report.temperature;
  report.epsilons = energy_levels(lambdas);
  report.partition_function = partition_function(report.epsilons, report.beta);
  report.helmholtz = helmholtz(report.partition_function, report.beta);
  report.internal_energy = internal_energy(lambdas, report.epsilons);
  report.entropy = entropy(lambdas);
  return report;
}

BlochAverage bloch_average_lambdas(
    const std::function<std::vector<double>(double, double)>& sampler,
    int resolution) {
  if (resolution < 4)
    throw invalid_input_error("bloch_average_lambdas: resolution must be at least 4");
  const int rows = resolution, cols = 2 * resolution;

  std::vector<double> averaged;
  double total_weight = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double gamma = kPi * (i + 0.5) / rows;
    const double weight = std::sin(gamma);  // area element, phi-independent
    for (int j = 0; j < cols; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / cols;
      const std::vector<double> sample = sampler(gamma, phi);
      if (averaged.empty()) averaged.assign(sample.size(), 0.0);
      if (sample.size() != averaged.size())
        throw invalid_input_error("bloch_average_lambdas: sampler size changed");
      for (size_t s = 0; s < sample.size(); ++s) averaged[s] += weight * sample[s];
      total_weight += weight;
    }
  }
  for (double& v : averaged) v /= total_weight;

  LambdaSpectrum spectrum;
  spectrum.values = averaged;
  std::sort(spectrum.values.begin(), spectrum.values.end());
  return {averaged, thermo_report(spectrum)};
}

}  // namespace qwalk
