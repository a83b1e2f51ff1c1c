// =============================================================================
// thermo.hpp
// Canonical-ensemble reading of an asymptotic spectrum Lambda (ascending):
//
//   T    = 2 / ln(Lmax/Lmin)                  (0 if Lmin=0, +inf if uniform)
//   eps_s = 1 - 2 ln(L_s/L_1) / ln(L_2N/L_1)  so eps_1 = +1, eps_2N = -1
//   Z    = sum_s e^{-beta eps_s},  A = -(1/beta) ln Z,
//   U    = sum_s L_s eps_s,        S = -sum_s L_s ln L_s   (nats).
//
// These definitions force the Boltzmann reconstruction e^{-beta eps_s}/Z =
// L_s exactly and the identity S = beta (U - A); the least probable level
// carries the highest energy (+1 in units of the level scale, kappa = 1).
//
// Degenerate spectra carry sentinels: a uniform spectrum means T = +inf,
// beta = 0, eps = 0, Z = 2N, U = 0, A = -inf, S = ln(2N); a spectrum with
// Lmin = 0 means T = 0, beta = +inf, with energies undefined (NaN) and S
// still computed from Lambda (0 ln 0 = 0).
// =============================================================================
#pragma once

#include <functional>
#include <vector>

#include "qwalk/asymptotics.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

struct ThermoReport {
  LambdaSpectrum lambdas;        // ascending
  double temperature;            // >= 0 or +inf
  double beta;                   // 1/T with the 0 <-> inf swaps above
  std::vector<double> epsilons;  // NaN-filled when undefined
  double partition_function;     // Z
  double helmholtz;              // A
  double internal_energy;        // U
  double entropy;                // S
};

// T = 2 / ln(Lmax/Lmin); the degenerate branches (uniform -> +inf, zero
// eigenvalue -> 0) are decided by the windows in types.hpp.
double temperature(const LambdaSpectrum& lambdas);

// Throws degeneracy_error on uniform or zero-containing spectra (the report
// assembler catches it and fills sentinels).
std::vector<double> energy_levels(const LambdaSpectrum& lambdas);

double partition_function(const std::vector<double>& epsilons, double beta);
double helmholtz(double z, double beta);
double internal_energy(const LambdaSpectrum& lambdas,
                       const std::vector<double>& epsilons);
double entropy(const LambdaSpectrum& lambdas);

ThermoReport thermo_report(const LambdaSpectrum& lambdas);

// Uniform-measure average of a Lambda sampler over the Bloch sphere
// (area element sin g dg dphi / 4pi, midpoint grid of `resolution` gamma
// rows and 2*resolution phi columns). The sampler returns spectra in a
// fixed family index order; the average is component-wise in that order
// and is reported both ways: as sampled (family order) and as the thermo
// report of the ascending-sorted averaged spectrum.
struct BlochAverage {
  std::vector<double> averaged;  // family index order
  ThermoReport report;
};
BlochAverage bloch_average_lambdas(
    const std::function<std::vector<double>(double, double)>& sampler,
    int resolution);

}  // namespace qwalk
