// =============================================================================
// initial_conditions.cpp
// Bloch chirality vectors, Gaussian packets (position and momentum sides),
// the sigma -> infinity delta limit, and the non-separable family states.
// =============================================================================
#include "qwalk/initial_conditions.hpp"

#include <cmath>
#include <map>

#include "qwalk/grover2d.hpp"

namespace qwalk {

BlochPoint::BlochPoint(double gamma_in, double phi_in)
    : gamma(gamma_in), phi(phi_in) {
  if (!(gamma >= 0.0 && gamma <= kPi))
    throw invalid_input_error("Bloch angle gamma must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi))
    throw invalid_input_error("Bloch angle phi must lie in [0, 2pi)");
}

SeparableGaussianIC::SeparableGaussianIC(double sigma_in, MomentumVector k0_in,
                                         BlochPoint bloch_in)
    : sigma(sigma_in), k0(std::move(k0_in)), bloch(bloch_in) {
  if (!(sigma > 0.0)) throw invalid_input_error("Gaussian width sigma must be positive");
  for (int a = 0; a < k0.dim(); ++a)
    if (!(std::abs(k0[a]) < kPi))
      throw invalid_input_error("packet momentum k0 must be strictly inside (-pi, pi)");
}

Vec chi_vector(int dim_n, const BlochPoint& bloch) {
  if (dim_n < 1) throw invalid_input_error("chi_vector: dimension N must be positive");
  const double inv = 1.0 / std::sqrt(static_cast<double>(dim_n));
  const double cg = std::cos(0.5 * bloch.gamma);
  const Cx sg = std::polar(std::sin(0.5 * bloch.gamma), bloch.phi);
  Vec chi(2 * dim_n);
  for (int alpha = 0; alpha < dim_n; ++alpha) {
    chi[2 * alpha] = inv * cg;       // |alpha,+> share of |Z+>
    chi[2 * alpha + 1] = inv * sg;   // |alpha,-> share of e^{i phi}|Z->
  }
  return chi;
}

WalkerState gaussian_position_amplitudes(const SeparableGaussianIC& ic,
                                         long window_radius) {
  if (static_cast<double>(window_radius) < 8.0 * ic.sigma)
    throw invalid_input_error(
        "gaussian_position_amplitudes: window radius must be at least 8 sigma");
  const int n = ic.k0.dim();
  const Vec chi = chi_vector(n, ic.bloch);

  // Dense box [-R, R]^N, support cut to the Euclidean ball |x| <= R (the
  // corners carry less than e^{-64} relative mass anyway) and renormalized.
  std::vector<long> lo(static_cast<size_t>(n), -window_radius);
  std::vector<long> hi(static_cast<size_t>(n), +window_radius);
  std::map<std::vector<long>, Vec> amplitudes;
  const double r2max = static_cast<double>(window_radius) * static_cast<double>(window_radius);
  std::vector<long> x = lo;
  while (true) {
    double r2 = 0.0, k0x = 0.0;
    for (int a = 0; a < n; ++a) {
      const double xa = static_cast<double>(x[static_cast<size_t>(a)]);
      r2 += xa * xa;
      k0x += ic.k0[a] * xa;
    }
    if (r2 <= r2max) {
      const Cx xi = std::polar(std::exp(-r2 / (2.0 * ic.sigma * ic.sigma)), k0x);
      amplitudes.emplace(x, xi * chi);
    }
    int a = n - 1;
    for (; a >= 0; --a) {
      if (++x[static_cast<size_t>(a)] <= hi[static_cast<size_t>(a)]) break;
      x[static_cast<size_t>(a)] = lo[static_cast<size_t>(a)];
    }
    if (a < 0) break;
  }
  WalkerState state = WalkerState::from_amplitudes_unchecked(n, amplitudes);
  state.normalize();
  return state;
}

Cx gaussian_momentum_profile(double sigma, const MomentumVector& k0,
                             const MomentumVector& k) {
  if (!(sigma > 0.0)) throw invalid_input_error("gaussian_momentum_profile: sigma must be positive");
  if (k0.dim() != k.dim())
    throw invalid_input_error("gaussian_momentum_profile: k and k0 dimensions differ");
  // Per axis the lattice sum periodizes the continuum transform; image terms
  // decay like e^{-sigma^2 (2 pi m)^2 / 2}, so the range below covers every
  // term above the 1e-30 drop threshold.
  const double reach = std::sqrt(2.0 * std::log(1e30)) / sigma;  // |delta| cutoff
  double profile = 1.0;
  for (int a = 0; a < k.dim(); ++a) {
    const double d = k[a] - k0[a];
    const long mmax = static_cast<long>(std::ceil((reach + std::abs(d)) / (2.0 * kPi))) + 1;
    double axis = 0.0;
    for (long m = -mmax; m <= mmax; ++m) {
      const double delta = d + 2.0 * kPi * static_cast<double>(m);
      const double term = std::exp(-0.5 * sigma * sigma * delta * delta);
      if (term >= 1e-30) axis += term;
    }
    profile *= axis;
  }
  return Cx(profile, 0.0);
}

DeltaLimit delta_limit_lambdas(const CoinMatrix& coin, const MomentumVector& k0,
                               const BlochPoint& bloch,
                               std::optional<double> theta) {
  if (k0.dim() != coin.dim_n())
    throw invalid_input_error("delta_limit_lambdas: coin and k0 dimensions differ");
  const Vec chi = chi_vector(coin.dim_n(), bloch);

  const bool grover_half =
      coin.dim_n() == 2 &&
      (coin.entries() - grover_coin(GroverParams(0.5)).entries())
              .cwiseAbs()
              .maxCoeff() <= 1e-12;
  const bool at_diabolical =
      grover_half && std::hypot(k0[0], k0[1]) <= 1e-6;

  if (theta.has_value() && !at_diabolical)
    throw invalid_input_error(
        "delta_limit_lambdas: approach angle theta only applies at the "
        "diabolical point of the p = 1/2 Grover walk");

  DeltaLimit limit;
  if (at_diabolical) {
    if (!theta.has_value())
      throw degeneracy_error(
          "delta_limit_lambdas: the diabolical point needs an approach angle theta");
    const auto vecs = diabolical_eigensystem(DiabolicalApproach(*theta));
    limit.vectors = Mat(4, 4);
    for (int s = 0; s < 4; ++s) limit.vectors.col(s) = vecs[static_cast<size_t>(s)];
  } else {
    const SpectralBundle bundle =
        grover_half ? grover_dynamics_bundle(k0)
                    : eigensystem(momentum_coin(coin, k0));
    for (const auto& [b, e] : bundle.clusters)
      if (e - b != 1)
        throw degeneracy_error(
            "delta_limit_lambdas: k0 sits on a spectral degeneracy; the limit "
            "depends on the approach direction");
    limit.vectors = bundle.vectors;
  }
  const int nc = static_cast<int>(limit.vectors.cols());
  limit.lambdas.resize(static_cast<size_t>(nc));
  for (int s = 0; s < nc; ++s) {
    const Cx overlap = limit.vectors.col(s).dot(chi);  // <phi_s | chi>
    limit.lambdas[static_cast<size_t>(s)] = std::norm(overlap);
  }
  return limit;
}

Vec nonseparable_momentum_state(NonSeparableFamily family, const BlochPoint& bloch,
                                const SpectralBundle& bundle) {
  for (const auto& [b, e] : bundle.clusters)
    if (e - b != 1)
      throw invalid_input_error(
          "nonseparable_momentum_state: bundle has an unresolved degenerate "
          "cluster; the family needs an ordered basis");
  const int nc = static_cast<int>(bundle.omega.size());
  const int n = nc / 2;
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  const Cx low = Cx(inv * std::cos(0.5 * bloch.gamma), 0.0);
  const Cx high = std::polar(inv * std::sin(0.5 * bloch.gamma), bloch.phi);

  Vec psi = Vec::Zero(nc);
  for (int s = 0; s < nc; ++s) {
    const int s1 = s + 1;  // 1-indexed branch label
    const bool takes_low = (family == NonSeparableFamily::I) ? (s1 <= n)
                                                             : (s1 % 2 == 0);
    psi += (takes_low ? low : high) * bundle.vectors.col(s);
  }
  return psi;
}

}  // namespace qwalk
