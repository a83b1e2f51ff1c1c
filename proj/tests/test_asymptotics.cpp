// =============================================================================
// test_asymptotics.cpp
// The Brillouin-zone quadrature: grid placement, the family-II uniform
// density, family I against its closed density (and the corrected spectrum
// of that matrix), the delta limit of wide packets, grid-refinement
// stability, and the spectrum extraction.
// =============================================================================
#include "qwalk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qwalk/grover2d.hpp"
#include "qwalk/thermo.hpp"
#include "qwalk/validate.hpp"
#include "test_support.hpp"

using namespace qwalk;
using test_support::begin_case;
using test_support::max_abs_diff;

namespace {

void grid_placement() {
  begin_case("quadrature grid");
  REQUIRE_THROWS_AS(QuadratureGrid(2, 6), invalid_input_error,
                    "M not a multiple of 4 rejected");
  REQUIRE_THROWS_AS(QuadratureGrid(2, 0), invalid_input_error, "M = 0 rejected");
  REQUIRE_THROWS_AS(QuadratureGrid(0, 8), invalid_input_error, "N = 0 rejected");
  const QuadratureGrid grid(2, 32);
  REQUIRE(grid.total_nodes() == 1024, "node count");
  REQUIRE_CLOSE(grid.node_weight(), 1.0 / 1024.0, 1e-18, "node weight");
  double min_edge = kPi, min_center = kPi;
  for (int j = 0; j < 32; ++j) {
    const double k = grid.node(j);
    REQUIRE_CLOSE(k, -kPi + (2.0 * kPi / 32.0) * (j + 0.5), 1e-15, "midpoint node");
    min_edge = std::min(min_edge, kPi - std::abs(k));
    min_center = std::min(min_center, std::abs(k));
  }
  // Midpoint placement keeps every node away from the closed forms'
  // excluded axis values k = 0 and +-pi.
  REQUIRE(min_edge > 1e-3 && min_center > 1e-3, "nodes clear of 0 and +-pi");
  const MomentumVector k_last = grid.node_k(grid.total_nodes() - 1);
  REQUIRE_CLOSE(k_last[0], grid.node(31), 1e-15, "flat index order, axis 0 slow");
  REQUIRE_CLOSE(k_last[1], grid.node(31), 1e-15, "flat index order, axis 1 fast");
}

void family_ii_uniform() {
  begin_case("family II density is maximally mixed");
  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const QuadratureGrid grid(2, 128);
  Rng rng(13);
  for (int trial = 0; trial < 3; ++trial) {
    const BlochPoint bloch(rng.uniform(0.0, kPi), rng.uniform(0.0, 2 * kPi));
    const AsymptoticIC ic = AsymptoticIC::nonseparable(NonSeparableFamily::II, bloch);
    const Mat rho = asymptotic_density(ic, coin, grid);
    REQUIRE(max_abs_diff(rho, rho.adjoint()) == 0.0, "density Hermitian to the bit");
    REQUIRE(max_abs_diff(rho, 0.25 * Mat::Identity(4, 4)) <= 1e-12,
            "family II density = I/4 independent of the Bloch point");
    const LambdaSpectrum spectrum = lambda_spectrum(rho);
    REQUIRE(std::isinf(thermo_report(spectrum).temperature),
            "uniform spectrum reads as T = +inf");
  }
}

void family_i_against_closed_density() {
  begin_case("family I density vs closed matrix");
  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const QuadratureGrid grid(2, 256);
  double worst = 0.0;
  for (const double gamma : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
    const AsymptoticIC ic =
        AsymptoticIC::nonseparable(NonSeparableFamily::I, BlochPoint(gamma, 0.9));
    const Mat rho = asymptotic_density(ic, coin, grid);
    REQUIRE_CLOSE(rho.trace().real(), 1.0, 1e-12, "unit trace");
    worst = std::max(worst, max_abs_diff(rho, nonseparable_I_closed_density(gamma)));
  }
  REQUIRE(worst <= 5e-9, "density vs closed matrix: " << worst);

  // The closed matrix's true spectrum: (1-c)/4 once, [1 + (3 - 8/pi) c]/4
  // once, [1 - (1 - 4/pi) c]/4 twice, c = cos gamma. Checked as plain linear
  // algebra, it pins the corrected eigenvalue set the quadrature confirms.
  for (const double gamma : {0.0, 0.6, kPi / 2, 2.4, kPi}) {
    const double c = std::cos(gamma);
    std::vector<double> want = {(1.0 - c) / 4.0, (1.0 + (3.0 - 8.0 / kPi) * c) / 4.0,
                                (1.0 - (1.0 - 4.0 / kPi) * c) / 4.0,
                                (1.0 - (1.0 - 4.0 / kPi) * c) / 4.0};
    std::sort(want.begin(), want.end());
    const LambdaSpectrum got = lambda_spectrum(nonseparable_I_closed_density(gamma));
    double sum = 0.0;
    for (int s = 0; s < 4; ++s) {
      REQUIRE_CLOSE(got.values[static_cast<size_t>(s)], want[static_cast<size_t>(s)],
                    1e-12, "closed-density eigenvalue " << s << " at gamma = " << gamma);
      sum += want[static_cast<size_t>(s)];
    }
    REQUIRE_CLOSE(sum, 1.0, 1e-14, "corrected eigenvalue set sums to one");
  }
  // At gamma = 0 the set is {0, 1/pi, 1/pi, 1 - 2/pi} ascending.
  const LambdaSpectrum pole = lambda_spectrum(nonseparable_I_closed_density(0.0));
  REQUIRE(pole.values[0] <= 1e-14, "gamma = 0 has a dark branch");
  REQUIRE_CLOSE(pole.values[1], 1.0 / kPi, 1e-14, "gamma = 0 middle pair");
  REQUIRE_CLOSE(pole.values[2], 1.0 / kPi, 1e-14, "gamma = 0 middle pair");
  REQUIRE_CLOSE(pole.values[3], 1.0 - 2.0 / kPi, 1e-14, "gamma = 0 top branch");
}

void family_i_temperature_pair() {
  begin_case("family I temperature, printed vs oracle");
  const QuadratureGrid grid(2, 256);

  // Fixed points agree: gamma = 0 is cold (dark branch), gamma = pi/2 is
  // maximally mixed.
  const TemperaturePair cold = nonseparable_I_temperature(0.0, grid);
  REQUIRE(cold.printed == 0.0 && cold.oracle == 0.0, "gamma = 0: both read T = 0");
  const TemperaturePair hot = nonseparable_I_temperature(kPi / 2, grid);
  REQUIRE(std::isinf(hot.oracle), "gamma = pi/2: oracle reads T = +inf");
  // cos(pi/2) is ~6e-17 rather than 0 in floating point, so the printed
  // formula lands astronomically high instead of exactly infinite.
  REQUIRE(std::isinf(hot.printed) || hot.printed > 1e12,
          "gamma = pi/2: printed formula diverges");

  // Away from the fixed points the two readings split; the oracle follows
  // the density's actual spectrum.
  const TemperaturePair end = nonseparable_I_temperature(kPi, grid);
  REQUIRE_CLOSE(end.oracle, 1.5415370006634594, 1e-6, "oracle temperature at gamma = pi");
  const double printed_want = 2.0 / std::abs(std::log((2.0 - 4.0 / kPi) / 2.0));
  REQUIRE_CLOSE(end.printed, printed_want, 1e-12, "printed formula at gamma = pi");
  REQUIRE(std::abs(end.printed - end.oracle) > 0.3,
          "the printed/oracle discrepancy stays measurable");
}

void packet_weights_and_delta_limit() {
  begin_case("packet weights and the wide-packet limit");
  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const QuadratureGrid grid(2, 128);
  const std::vector<double> k0 = {0.8, -0.5};
  const BlochPoint bloch(0.9, 2.0);

  const AsymptoticIC narrow = AsymptoticIC::gaussian(3.0, k0, bloch);
  const std::vector<double> weights = ic_node_weights(narrow, grid);
  double total = 0.0;
  for (const double w : weights) {
    REQUIRE(w >= 0.0, "weights non-negative");
    total += w;
  }
  REQUIRE_CLOSE(total, 1.0, 1e-12, "weights renormalized on the grid");

  // t = 0 through the time-resolved quadrature: the packet's chirality
  // factor is k-independent, so rho(0) is the pure chi projector.
  const Vec chi = chi_vector(2, bloch);
  const Mat rho0 = rho_c_at_time(narrow, coin, grid, 0);
  REQUIRE(max_abs_diff(rho0, chi * chi.adjoint()) <= 1e-13,
          "t = 0 density is the pure Bloch projector");

  // sigma -> infinity: the asymptotic spectrum collapses onto the
  // plane-wave overlap weights at k0.
  const AsymptoticIC wide = AsymptoticIC::gaussian(20.0, k0, bloch);
  const QuadratureGrid fine(2, 256);
  const LambdaSpectrum spectrum =
      lambda_spectrum(asymptotic_density(wide, coin, fine));
  RVec k0v(2);
  k0v << 0.8, -0.5;
  DeltaLimit limit = delta_limit_lambdas(coin, MomentumVector(std::move(k0v)), bloch);
  std::sort(limit.lambdas.begin(), limit.lambdas.end());
  double worst = 0.0;
  for (int s = 0; s < 4; ++s)
    worst = std::max(worst, std::abs(spectrum.values[static_cast<size_t>(s)] -
                                     limit.lambdas[static_cast<size_t>(s)]));
  REQUIRE(worst <= 2e-2, "sigma = 20 within 2e-2 of the delta limit: " << worst);
}

void grid_refinement() {
  begin_case("grid refinement M -> 2M");
  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const QuadratureGrid coarse(2, 256), fine(2, 512);
  const std::vector<AsymptoticIC> ics = {
      AsymptoticIC::nonseparable(NonSeparableFamily::I, BlochPoint(0.8, 1.1)),
      AsymptoticIC::nonseparable(NonSeparableFamily::II, BlochPoint(0.8, 1.1)),
      AsymptoticIC::gaussian(6.0, {0.8, -0.5}, BlochPoint(0.8, 1.1))};
  for (size_t i = 0; i < ics.size(); ++i) {
    const Mat a = asymptotic_density(ics[i], coin, coarse);
    const Mat b = asymptotic_density(ics[i], coin, fine);
    const double drift = max_abs_diff(a, b);
    REQUIRE(drift < 1e-6, "refinement drift " << drift << " for ic " << i);
  }
}

void spectrum_extraction() {
  begin_case("spectrum extraction");
  Mat skew = 0.25 * Mat::Identity(4, 4);
  skew(0, 1) = Cx(0.0, 1e-9);  // Hermiticity defect above the gate
  REQUIRE_THROWS_AS(lambda_spectrum(skew), numerical_failure_error,
                    "non-Hermitian input rejected");
  Mat negative = Mat::Zero(4, 4);
  negative.diagonal() << Cx(-1e-9, 0), Cx(0.3, 0), Cx(0.3, 0), Cx(0.4, 0);
  REQUIRE_THROWS_AS(lambda_spectrum(negative), numerical_failure_error,
                    "eigenvalue below -1e-10 rejected");
  Mat grazing = Mat::Zero(4, 4);
  grazing.diagonal() << Cx(-5e-11, 0), Cx(0.3, 0), Cx(0.3, 0), Cx(0.4, 0);
  const LambdaSpectrum clipped = lambda_spectrum(grazing);
  REQUIRE(clipped.values[0] == 0.0, "grazing negative clipped to zero");
  REQUIRE(clipped.values[0] <= clipped.values[1] &&
              clipped.values[1] <= clipped.values[2] &&
              clipped.values[2] <= clipped.values[3],
          "spectrum ascending");
}

void bundle_provider_routing() {
  begin_case("bundle provider routing");
  const CoinMatrix half = grover_coin(GroverParams(0.5));
  const BundleProvider closed_route(half);
  REQUIRE(closed_route.grover_half, "p = 1/2 Grover coin detected");
  REQUIRE(std::string(closed_route.branch_order_name()) == "grover",
          "closed route reports the family branch order");
  const CoinMatrix other = grover_coin(GroverParams(0.4));
  const BundleProvider generic_route(other);
  REQUIRE(!generic_route.grover_half, "p != 1/2 takes the generic solver");
  REQUIRE(std::string(generic_route.branch_order_name()) == "phase_ascending",
          "generic route reports ascending order");
  // Both routes satisfy the dynamics eigen-equation at a shared k.
  const MomentumVector k{0.9, -1.7};
  for (const BundleProvider* provider : {&closed_route, &generic_route}) {
    const SpectralBundle bundle = provider->at(k);
    const Mat ck = momentum_coin(provider->coin, k);
    for (int s = 0; s < 4; ++s) {
      const Cx lambda = std::exp(Cx(0.0, -bundle.omega[s]));
      REQUIRE((ck * bundle.vectors.col(s) - lambda * bundle.vectors.col(s)).norm() <= 1e-10,
              "provider eigen-residual, branch " << s);
    }
  }
}

}  // namespace

int main() {
  grid_placement();
  family_ii_uniform();
  family_i_against_closed_density();
  family_i_temperature_pair();
  packet_weights_and_delta_limit();
  grid_refinement();
  spectrum_extraction();
  bundle_provider_routing();
  test_support::all_passed("test_asymptotics");
  return 0;
}
