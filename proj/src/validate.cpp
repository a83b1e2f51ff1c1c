// =============================================================================
// validate.cpp
// Randomized invariant suites shared by `qwalk validate` and the tests.
// =============================================================================
#include "qwalk/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/QR>

#include "qwalk/asymptotics.hpp"
#include "qwalk/coin_spectral.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/grover2d.hpp"
#include "qwalk/initial_conditions.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/thermo.hpp"

namespace qwalk {

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64 core)
// ---------------------------------------------------------------------------

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; the first uniform is shifted into (0, 1] to keep log finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

Mat random_unitary(Rng& rng, int size) {
  if (size < 1) throw invalid_input_error("random_unitary: size must be positive");
  Mat g(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) g(r, c) = Cx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < size; ++j) {
    const Cx d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0.0) ? d / m : Cx(1.0, 0.0);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Suite plumbing: each check records the first failure with a description.
// ---------------------------------------------------------------------------

namespace {

struct Checker {
  bool passed = true;
  std::string detail;
  int checks = 0;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
  void require_close(double value, double target, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << " (got " << value << ", want " << target << " +- " << tol << ")";
    require(std::abs(value - target) <= tol, os.str());
  }
  SuiteResult result(const std::string& name) const {
    if (passed) {
      std::ostringstream os;
      os << checks << " checks passed";
      return {name, true, os.str()};
    }
    return {name, false, detail};
  }
};

SuiteResult guarded(const std::string& name, void (*body)(Checker&, Rng&), Rng& rng) {
  Checker check;
  try {
    body(check, rng);
  } catch (const std::exception& e) {
    return {name, false, std::string("unexpected exception: ") + e.what()};
  }
  return check.result(name);
}

// -- coin-spectral ----------------------------------------------------------

void suite_coin_spectral(Checker& check, Rng& rng) {
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      const CoinMatrix coin(n, random_unitary(rng, 2 * n));
      RVec kv(n);
      for (int a = 0; a < n; ++a) kv[a] = rng.uniform(-kPi, kPi);
      const MomentumVector k(kv);
      const Mat ck = momentum_coin(coin, k);
      check.require(unitarity_residual(ck) <= 1e-12, "momentum coin stays unitary");

      const SpectralBundle bundle = eigensystem(ck);
      double max_residual = 0.0;
      Mat rebuilt = Mat::Zero(2 * n, 2 * n);
      for (int s = 0; s < 2 * n; ++s) {
        const Cx lam = std::polar(1.0, -bundle.omega[s]);
        const Vec v = bundle.vectors.col(s);
        max_residual = std::max(max_residual, (ck * v - lam * v).norm());
        rebuilt += lam * (v * v.adjoint());
        check.require(bundle.omega[s] > -kPi && bundle.omega[s] <= kPi + 1e-15,
                      "eigenphase lies in (-pi, pi]");
        if (s) check.require(bundle.omega[s] >= bundle.omega[s - 1] - 1e-9,
                             "eigenphases sorted ascending");
      }
      check.require(max_residual <= 1e-10, "eigenvector residual below 1e-10");
      check.require(unitarity_residual(bundle.vectors) <= 1e-10,
                    "eigenbasis orthonormal");
      check.require((rebuilt - ck).cwiseAbs().maxCoeff() <= 1e-10,
                    "spectral reconstruction recovers the momentum coin");

      Vec psi0(2 * n);
      for (int c = 0; c < 2 * n; ++c) psi0[c] = Cx(rng.normal(), rng.normal());
      psi0.normalize();
      const Vec f = initial_weights(bundle, psi0);
      check.require_close(f.squaredNorm(), 1.0, 1e-12, "weights satisfy Parseval");
      const SpectralBundle with = with_weights(bundle, psi0);
      check.require((propagate_momentum(with, 0) - psi0).norm() <= 1e-12,
                    "t = 0 propagation returns the initial state");
      check.require_close(propagate_momentum(with, 37).norm(), 1.0, 1e-12,
                          "propagation preserves the norm");
    }
  }

  // Transform round trip on a random small 2D state.
  std::map<std::vector<long>, Vec> amplitudes;
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y) {
      Vec v(4);
      for (int c = 0; c < 4; ++c) v[c] = Cx(rng.normal(), rng.normal());
      amplitudes[{x, y}] = v;
    }
  WalkerState state = WalkerState::from_amplitudes_unchecked(2, amplitudes);
  state.normalize();
  const MomentumField field = dft_forward_grid(state, 16);
  double worst = 0.0;
  for (long node = 0; node < field.total_nodes(); node += 37) {
    const Vec direct = dft_forward(state, field.node_k(node));
    worst = std::max(worst,
                     (direct - field.values[static_cast<size_t>(node)]).norm());
  }
  check.require(worst <= 1e-10, "grid transform matches the per-point transform");
  const WalkerState back = dft_inverse_box(field, {-2, -2}, {2, 2});
  double round_trip = 0.0;
  for (const auto& [x, v] : amplitudes)
    round_trip = std::max(round_trip, (back.amplitude(x) - state.amplitude(x)).norm());
  check.require(round_trip <= 1e-10, "inverse transform round trip");
  const Vec origin = dft_inverse(field, {0, 0});
  check.require((origin - state.amplitude({0, 0})).norm() <= 1e-10,
                "single-point inverse matches");
}

// -- lattice ----------------------------------------------------------------

void suite_lattice(Checker& check, Rng& rng) {
  for (int n = 1; n <= 2; ++n) {
    const CoinMatrix coin(n, random_unitary(rng, 2 * n));
    std::map<std::vector<long>, Vec> amplitudes;
    const long reach = (n == 1) ? 2 : 1;
    std::vector<long> x(static_cast<size_t>(n), -reach);
    while (true) {
      Vec v(2 * n);
      for (int c = 0; c < 2 * n; ++c) v[c] = Cx(rng.normal(), rng.normal());
      amplitudes[x] = v;
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++x[static_cast<size_t>(a)] <= reach) break;
        x[static_cast<size_t>(a)] = -reach;
      }
      if (a < 0) break;
    }
    WalkerState state = WalkerState::from_amplitudes_unchecked(n, amplitudes);
    state.normalize();

    const long t = (n == 1) ? 12 : 6;
    const WalkerState evolved = evolve(state, coin, t);
    check.require_close(evolved.norm_squared(), 1.0, 1e-12 * static_cast<double>(t),
                        "evolution conserves the norm");

    double mass = 0.0;
    for (const auto& [point, p] : position_distribution(evolved)) mass += p;
    check.require_close(mass, 1.0, 1e-12, "position distribution sums to 1");

    // Momentum-side oracle: evolve the transform by spectral phases and
    // compare against the transform of the directly evolved state.
    const int m = 32;
    const MomentumField field0 = dft_forward_grid(state, m);
    const MomentumField field_t = dft_forward_grid(evolved, m);
    double worst = 0.0;
    for (long node = 0; node < field0.total_nodes(); node += (n == 1 ? 1 : 7)) {
      const MomentumVector k = field0.node_k(node);
      const SpectralBundle bundle =
          with_weights(eigensystem(momentum_coin(coin, k)),
                       field0.values[static_cast<size_t>(node)]);
      const Vec oracle = propagate_momentum(bundle, t);
      worst = std::max(
          worst, (oracle - field_t.values[static_cast<size_t>(node)]).norm());
    }
    check.require(worst <= 1e-9, "position evolution matches the spectral oracle");

    const Mat rho = reduced_density(evolved);
    check.require((rho - rho.adjoint()).cwiseAbs().maxCoeff() == 0.0,
                  "reduced density exactly Hermitian");
    check.require_close(rho.trace().real(), 1.0, 1e-12, "reduced density has unit trace");
  }

  // Pruning drops only mass below the threshold.
  std::map<std::vector<long>, Vec> amplitudes;
  Vec core(2);
  core << Cx(1.0, 0.0), Cx(0.0, 0.0);
  amplitudes[{0}] = core;
  Vec fringe(2);
  fringe << Cx(1e-16, 0.0), Cx(0.0, 1e-16);
  amplitudes[{40}] = fringe;
  WalkerState padded = WalkerState::from_amplitudes_unchecked(1, amplitudes);
  padded.prune();
  check.require(padded.hi()[0] == 0 && padded.lo()[0] == 0,
                "pruning trims sub-threshold boundary slabs");
  check.require_close(padded.norm_squared(), 1.0, 1e-15, "pruning keeps the core mass");
}

// -- grover2d ---------------------------------------------------------------

void suite_grover2d(Checker& check, Rng& rng) {
  const GroverParams half(0.5);
  int accepted = 0;
  while (accepted < 24) {
    const double k1 = rng.uniform(-kPi, kPi), k2 = rng.uniform(-kPi, kPi);
    SpectralBundle closed{MomentumVector{0.0, 0.0}, RVec(), Mat(), {}, Vec()};
    try {
      closed = closed_eigensystem(k1, k2);
    } catch (const branch_singularity_error&) {
      continue;  // guarded locus; redraw
    }
    ++accepted;
    const Mat g = grover_momentum_coin(half, k1, k2);
    double max_residual = 0.0;
    for (int s = 0; s < 4; ++s) {
      const Cx lam = std::polar(1.0, -closed.omega[s]);
      const Vec v = closed.vectors.col(s);
      max_residual = std::max(max_residual, (g * v - lam * v).norm());
    }
    check.require(max_residual <= 1e-10, "closed eigenvectors solve the momentum matrix");
    check.require(unitarity_residual(closed.vectors) <= 1e-10,
                  "closed eigenbasis orthonormal");
    check.require(closed.omega[0] == 0.0 && closed.omega[1] == kPi &&
                      closed.omega[2] <= 0.0 && closed.omega[3] >= 0.0,
                  "closed branch order (0, pi, -w, +w)");

    // The dynamics bundle must agree with the generic solver branch by
    // branch (projectors, not vectors: the gauge differs).
    const MomentumVector k{k1, k2};
    const SpectralBundle dyn = grover_dynamics_bundle(k);
    const SpectralBundle generic =
        grover_branch_order(eigensystem(momentum_coin(grover_coin(half), k)));
    double proj_diff = 0.0;
    for (int s = 0; s < 4; ++s) {
      const Vec a = dyn.vectors.col(s), b = generic.vectors.col(s);
      proj_diff = std::max(proj_diff,
                           (a * a.adjoint() - b * b.adjoint()).cwiseAbs().maxCoeff());
      check.require(std::abs(dyn.omega[s] - generic.omega[s]) <= 1e-9,
                    "dynamics bundle eigenphases match the generic solver");
    }
    check.require(proj_diff <= 1e-8, "dynamics bundle projectors match the generic solver");
  }

  for (int rep = 0; rep < 50; ++rep) {
    const double gamma = rng.uniform(0.0, kPi);
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const auto lam = diabolical_lambdas(gamma, phi, theta);
    double sum = 0.0, lo = 1.0;
    for (double v : lam) {
      sum += v;
      lo = std::min(lo, v);
    }
    check.require_close(sum, 1.0, 1e-14, "diabolical weights sum to 1");
    check.require(lo >= -1e-15, "diabolical weights non-negative");
  }

  // The hot plateau: every x in [-3/5, -1/3] at theta = pi gives T = 2/ln 2.
  const double t0 = 2.0 / std::log(2.0);
  for (int i = 0; i <= 20; ++i) {
    const double x = -3.0 / 5.0 + (i / 20.0) * (-1.0 / 3.0 + 3.0 / 5.0);
    const auto lam = diabolical_lambdas_from_x(x, kPi);
    const auto [mn, mx] = std::minmax_element(lam.begin(), lam.end());
    check.require_close(spectrum_temperature(*mn, *mx), t0, 1e-12,
                        "isotherm plateau at 2/ln 2");
  }

  const auto vecs = diabolical_eigensystem(DiabolicalApproach(rng.uniform(0.0, 2.0 * kPi)));
  Mat basis(4, 4);
  for (int s = 0; s < 4; ++s) basis.col(s) = vecs[static_cast<size_t>(s)];
  check.require(unitarity_residual(basis) <= 1e-12, "limit eigenbasis orthonormal");
}

// -- initial-conditions ------------------------------------------------------

void suite_initial_conditions(Checker& check, Rng& rng) {
  for (int rep = 0; rep < 10; ++rep) {
    const BlochPoint bloch(rng.uniform(0.0, kPi), rng.uniform(0.0, 2.0 * kPi));
    for (int n = 1; n <= 3; ++n)
      check.require_close(chi_vector(n, bloch).norm(), 1.0, 1e-14,
                          "chi vector has unit norm");
  }

  const BlochPoint bloch(1.1, 0.7);
  const SeparableGaussianIC ic(2.0, MomentumVector{0.9, -0.4}, bloch);
  const WalkerState packet = gaussian_position_amplitudes(ic, 16);
  check.require_close(packet.norm_squared(), 1.0, 1e-12, "packet normalized");
  const Vec at_origin = packet.amplitude({0, 0});
  const Vec offset = packet.amplitude({3, 1});
  const double expected_ratio =
      std::exp(-(9.0 + 1.0) / (2.0 * ic.sigma * ic.sigma));
  check.require_close(offset.norm() / at_origin.norm(), expected_ratio, 1e-12,
                      "packet profile falls off as the Gaussian");
  const Cx phase = offset[0] / at_origin[0];
  check.require_close(std::arg(phase), std::fmod(0.9 * 3.0 - 0.4 * 1.0, 2.0 * kPi),
                      1e-12, "packet carries the e^{i k0 . x} phase");

  for (int rep = 0; rep < 20; ++rep) {
    const double sigma = rng.uniform(0.7, 8.0);
    const MomentumVector k0{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double d1 = rng.uniform(0.0, 0.8), d2 = rng.uniform(0.0, 0.8);
    const auto shifted = [&](double sign) {
      return MomentumVector{k0[0] + sign * d1, k0[1] + sign * d2};
    };
    const double plus = gaussian_momentum_profile(sigma, k0, shifted(+1)).real();
    const double minus = gaussian_momentum_profile(sigma, k0, shifted(-1)).real();
    check.require(std::abs(plus - minus) <= 1e-12 * std::max(plus, 1e-30),
                  "momentum profile symmetric about k0");
    check.require(plus > 0.0, "momentum profile positive");
  }

  // Delta limit: completeness forces the weights to sum to 1.
  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const DeltaLimit generic =
      delta_limit_lambdas(coin, MomentumVector{0.9, -0.4}, bloch);
  double sum = 0.0;
  for (double v : generic.lambdas) sum += v;
  check.require_close(sum, 1.0, 1e-12, "delta-limit weights sum to 1");

  const DeltaLimit diabolical =
      delta_limit_lambdas(coin, MomentumVector{0.0, 0.0}, bloch, kPi / 3.0);
  const auto printed = diabolical_lambdas(bloch.gamma, bloch.phi, kPi / 3.0);
  for (int s = 0; s < 4; ++s)
    check.require_close(diabolical.lambdas[static_cast<size_t>(s)],
                        printed[static_cast<size_t>(s)], 1e-12,
                        "diabolical delta limit matches the closed weights");

  bool threw = false;
  try {
    delta_limit_lambdas(coin, MomentumVector{0.0, 0.0}, bloch);
  } catch (const degeneracy_error&) {
    threw = true;
  }
  check.require(threw, "diabolical point without theta reports the degeneracy");

  threw = false;
  try {
    delta_limit_lambdas(coin, MomentumVector{0.9, -0.4}, bloch, kPi / 3.0);
  } catch (const invalid_input_error&) {
    threw = true;
  }
  check.require(threw, "theta away from the diabolical point is rejected");

  // Family states: unit norm and the intended eigenbasis coefficients.
  const SpectralBundle bundle = grover_dynamics_bundle(MomentumVector{1.9, -0.8});
  for (NonSeparableFamily family : {NonSeparableFamily::I, NonSeparableFamily::II}) {
    const Vec psi = nonseparable_momentum_state(family, bloch, bundle);
    check.require_close(psi.norm(), 1.0, 1e-12, "family state has unit norm");
    for (int s = 0; s < 4; ++s) {
      const Cx coeff = bundle.vectors.col(s).dot(psi);
      const bool low = (family == NonSeparableFamily::I) ? (s < 2) : (s % 2 == 1);
      const Cx want = low ? Cx(std::cos(0.55), 0.0) / std::sqrt(2.0)
                          : std::polar(std::sin(0.55), 0.7) / std::sqrt(2.0);
      check.require(std::abs(coeff - want) <= 1e-12, "family coefficients as defined");
    }
  }
}

// -- asymptotics --------------------------------------------------------------

void suite_asymptotics(Checker& check, Rng& rng) {
  const QuadratureGrid grid(2, 32);
  check.require_close(
      grid.node_weight() * static_cast<double>(grid.total_nodes()), 1.0, 1e-12,
      "quadrature weights sum to 1");
  for (int j = 0; j < grid.points_per_axis(); ++j) {
    const double k = grid.node(j);
    check.require(std::abs(k) > 1e-3 && kPi - std::abs(k) > 1e-3,
                  "midpoint nodes avoid 0 and +-pi");
  }

  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const BlochPoint bloch(rng.uniform(0.2, kPi - 0.2), rng.uniform(0.0, 2.0 * kPi));

  // Family II: the even/odd split hits each branch pair with equal weight,
  // and the paired projector integrals are each I/2, so the density is I/4
  // regardless of (gamma, phi) — already at modest M.
  const Mat rho2 = asymptotic_density(
      AsymptoticIC::nonseparable(NonSeparableFamily::II, bloch), coin, grid);
  check.require((rho2 - 0.25 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10,
                "family II density is maximally mixed");

  // Family I at M = 32 versus the closed density (midpoint error ~ M^-4).
  const Mat rho1 = asymptotic_density(
      AsymptoticIC::nonseparable(NonSeparableFamily::I, bloch), coin, grid);
  check.require((rho1 - nonseparable_I_closed_density(bloch.gamma))
                        .cwiseAbs()
                        .maxCoeff() <= 1e-5,
                "family I density matches its closed form");
  check.require_close(rho1.trace().real(), 1.0, 1e-12, "density has unit trace");
  check.require((rho1 - rho1.adjoint()).cwiseAbs().maxCoeff() == 0.0,
                "density exactly Hermitian");
  const LambdaSpectrum spectrum = lambda_spectrum(rho1);
  check.require(std::is_sorted(spectrum.values.begin(), spectrum.values.end()),
                "spectrum ascending");

  // Gaussian packet: the pre-limit density approaches the cluster-projected
  // limit as the Cesaro window grows.
  const AsymptoticIC gaussian =
      AsymptoticIC::gaussian(3.0, {0.8, -0.5}, BlochPoint(1.1, 0.7));
  const Mat target = asymptotic_density(gaussian, coin, grid);
  const auto cesaro_distance = [&](long t_burn, long t_max) {
    Mat mean = Mat::Zero(4, 4);
    for (long t = t_burn + 1; t <= t_max; ++t)
      mean += rho_c_at_time(gaussian, coin, grid, t);
    mean /= static_cast<double>(t_max - t_burn);
    return (mean - target).cwiseAbs().maxCoeff();
  };
  const double early = cesaro_distance(2, 20);
  const double late = cesaro_distance(100, 400);
  check.require(late < early, "time average drifts toward the asymptotic density");
  check.require(late <= 2e-2, "late time average is close to the asymptotic density");
}

// -- thermo -------------------------------------------------------------------

void suite_thermo(Checker& check, Rng& rng) {
  for (int rep = 0; rep < 200; ++rep) {
    const int nc = 2 * (1 + static_cast<int>(rng.next_u64() % 3));
    LambdaSpectrum spectrum;
    spectrum.values.resize(static_cast<size_t>(nc));
    double sum = 0.0;
    for (double& v : spectrum.values) {
      v = std::exp(rng.uniform(-4.0, 0.0));
      sum += v;
    }
    for (double& v : spectrum.values) v /= sum;
    std::sort(spectrum.values.begin(), spectrum.values.end());
    if (spectrum.values.back() - spectrum.values.front() <= 1e-10) continue;

    const ThermoReport report = thermo_report(spectrum);
    check.require_close(report.epsilons.front(), 1.0, 1e-12, "lowest weight at eps = +1");
    check.require_close(report.epsilons.back(), -1.0, 1e-12, "highest weight at eps = -1");
    check.require_close(
        report.entropy - report.beta * (report.internal_energy - report.helmholtz),
        0.0, 1e-12, "S = beta (U - A)");
    double worst = 0.0;
    for (size_t s = 0; s < spectrum.values.size(); ++s)
      worst = std::max(worst,
                       std::abs(std::exp(-report.beta * report.epsilons[s]) /
                                    report.partition_function -
                                spectrum.values[s]));
    check.require(worst <= 1e-12, "Boltzmann reconstruction recovers Lambda");
  }

  // Worked reference spectrum (1/8, 1/8, 1/4, 1/2).
  LambdaSpectrum ref;
  ref.values = {0.125, 0.125, 0.25, 0.5};
  const ThermoReport report = thermo_report(ref);
  check.require_close(report.temperature, 2.0 / std::log(4.0), 1e-15, "reference T");
  check.require_close(report.beta, std::log(2.0), 1e-15, "reference beta");
  check.require_close(report.partition_function, 4.0, 1e-12, "reference Z");
  check.require_close(report.helmholtz, -2.0, 1e-12, "reference A");
  check.require_close(report.internal_energy, -0.25, 1e-12, "reference U");
  check.require_close(report.entropy, 1.75 * std::log(2.0), 1e-12, "reference S");

  // Sentinel paths.
  LambdaSpectrum uniform;
  uniform.values = {0.25, 0.25, 0.25, 0.25};
  const ThermoReport hot = thermo_report(uniform);
  check.require(std::isinf(hot.temperature) && hot.temperature > 0, "uniform is T = +inf");
  check.require(hot.beta == 0.0 && hot.partition_function == 4.0 &&
                    hot.internal_energy == 0.0 && std::isinf(hot.helmholtz) &&
                    hot.helmholtz < 0,
                "uniform sentinels");
  check.require_close(hot.entropy, std::log(4.0), 1e-15, "uniform entropy ln 2N");

  LambdaSpectrum pinched;
  pinched.values = {0.0, 0.1, 0.4, 0.5};
  const ThermoReport cold = thermo_report(pinched);
  check.require(cold.temperature == 0.0 && std::isinf(cold.beta) && cold.beta > 0,
                "zero eigenvalue is T = 0");
  check.require(std::isnan(cold.partition_function) && std::isnan(cold.epsilons[0]),
                "T = 0 undefined energies carry NaN");
  check.require_close(cold.entropy,
                      -(0.1 * std::log(0.1) + 0.4 * std::log(0.4) + 0.5 * std::log(0.5)),
                      1e-15, "T = 0 entropy still defined");

  // Bloch average: uniform measure, so averaging the diabolical quadruple
  // integrates x = sin g cos phi to 0 by symmetry.
  const BlochAverage average = bloch_average_lambdas(
      [](double gamma, double phi) {
        const auto lam = diabolical_lambdas(gamma, phi, kPi);
        return std::vector<double>(lam.begin(), lam.end());
      },
      24);
  check.require_close(average.averaged[0], 0.5, 1e-12,
                      "averaged Lambda_1 = (1 + <x>)/2 = 1/2");
  double total = 0.0;
  for (double v : average.averaged) total += v;
  check.require_close(total, 1.0, 1e-12, "averaged weights sum to 1");
}

// -- csv ----------------------------------------------------------------------

void suite_csv(Checker& check, Rng& rng) {
  check.require(csv_token(std::numeric_limits<double>::infinity()) == "inf" &&
                    csv_token(-std::numeric_limits<double>::infinity()) == "-inf" &&
                    csv_token(std::numeric_limits<double>::quiet_NaN()) == "nan",
                "sentinel tokens");
  for (int rep = 0; rep < 200; ++rep) {
    const double v = rng.normal() * std::exp(rng.uniform(-12.0, 12.0));
    const std::string token = csv_token(v);
    check.require(std::stod(token) == v, "17-digit tokens round-trip exactly");
    check.require(token.find(',') == std::string::npos, "tokens never contain commas");
  }

  const auto write_once = [](const std::string& path) {
    CsvWriter writer(path);
    writer.comment("alpha = 1");
    writer.header({"a", "b"});
    writer.row({1.5, 1.0 / 3.0});
    writer.row({-0.0, std::numeric_limits<double>::infinity()});
    writer.close();
    std::ifstream in(path, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
  };
  const std::string first = write_once("validate_csv_a.csv");
  const std::string second = write_once("validate_csv_b.csv");
  check.require(first == second, "repeated writes are byte-identical");
  check.require(first == "# alpha = 1\na,b\n1.5,0.33333333333333331\n-0,inf\n",
                "exact byte layout");
  std::remove("validate_csv_a.csv");
  std::remove("validate_csv_b.csv");
}

}  // namespace

std::vector<SuiteResult> run_validation_suites(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SuiteResult> results;
  results.push_back(guarded("coin-spectral", suite_coin_spectral, rng));
  results.push_back(guarded("lattice", suite_lattice, rng));
  results.push_back(guarded("grover2d", suite_grover2d, rng));
  results.push_back(guarded("initial-conditions", suite_initial_conditions, rng));
  results.push_back(guarded("asymptotics", suite_asymptotics, rng));
  results.push_back(guarded("thermo", suite_thermo, rng));
  results.push_back(guarded("csv", suite_csv, rng));
  return results;
}

}  // namespace qwalk
