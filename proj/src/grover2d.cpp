// =============================================================================
// grover2d.cpp
// Closed forms for the 2D Grover family: momentum matrix, p = 1/2
// eigensystem, diabolical-point limits, and the isotherm map.
// =============================================================================
#include "qwalk/grover2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qwalk {

GroverParams::GroverParams(double p_in) : p(p_in) {
  if (!(p >= 0.0 && p <= 1.0))
    throw invalid_input_error("Grover parameter p must lie in [0, 1]");
}

DiabolicalApproach::DiabolicalApproach(double theta_in) : theta(theta_in) {
  if (!(theta >= 0.0 && theta < 2.0 * kPi))
    throw invalid_input_error("approach angle theta must lie in [0, 2pi)");
}

CoinMatrix grover_coin(const GroverParams& params) {
  const double p = params.p, q = params.q();
  const double r = std::sqrt(p * q);
  Mat c(4, 4);
  c << -p, q, r, r,
        q, -p, r, r,
        r, r, -q, p,
        r, r, p, -q;
  return CoinMatrix(2, c);
}

Mat grover_momentum_coin(const GroverParams& params, double k1, double k2) {
  Mat g = grover_coin(params).entries();
  g.row(0) *= std::exp(Cx(0.0, +k1));
  g.row(1) *= std::exp(Cx(0.0, -k1));
  g.row(2) *= std::exp(Cx(0.0, +k2));
  g.row(3) *= std::exp(Cx(0.0, -k2));
  return g;
}

namespace {

// Smallest angular distance of k to 0 mod 2pi, for k in [-pi, pi].
double dist_to_zero(double k) { return std::abs(k); }
double dist_to_pi(double k) { return kPi - std::abs(k); }

}  // namespace

SpectralBundle closed_eigensystem(double k1, double k2) {
  MomentumVector k{k1, k2};  // validates the [-pi, pi] range

  const double c1 = std::cos(k1), c2 = std::cos(k2);

  // Guarded loci: the diabolical point (three branches collide at -1), the
  // removable cos k1 = cos k2 normalization singularity of the dispersive
  // pair, and — as pure floating-point defence far below any production
  // node spacing — the per-axis points where a single component's
  // denominator vanishes (k_a = 0 kills the lambda = -1 branch, k_a = +-pi
  // the lambda = +1 branch).
  if (std::hypot(dist_to_zero(k1), dist_to_zero(k2)) <= 1e-6)
    throw branch_singularity_error("closed_eigensystem: within 1e-6 of the diabolical point");
  if (std::abs(c1 - c2) <= 1e-6)
    throw branch_singularity_error("closed_eigensystem: within 1e-6 of cos k1 = cos k2");
  for (double ka : {k1, k2}) {
    if (dist_to_zero(ka) <= 1e-9 || dist_to_pi(ka) <= 1e-9)
      throw branch_singularity_error("closed_eigensystem: axis momentum too close to 0 or pi");
  }

  // Dispersion of the propagating pair: cos w = -(cos k1 + cos k2)/2.
  const double cw = std::clamp(-0.5 * (c1 + c2), -1.0, 1.0);
  const double w = std::acos(cw);

  // Branch order s = 1..4: lambda = (1, -1, e^{iw}, e^{-iw}), i.e.
  // eigenphases (0, pi, -w, +w) under lambda = e^{-i omega}.
  const Cx lams[4] = {Cx(1.0, 0.0), Cx(-1.0, 0.0), std::polar(1.0, +w),
                      std::polar(1.0, -w)};

  SpectralBundle bundle{std::move(k), RVec(4), Mat(4, 4), {}, Vec()};
  bundle.omega[0] = 0.0;
  bundle.omega[1] = kPi;
  bundle.omega[2] = -w;
  bundle.omega[3] = +w;

  // Unnormalized components 1/(1 + e^{-i k_a} lambda), 1/(1 + e^{+i k_a} lambda)
  // per axis; closed normalization constants. The 1 +- cos k_a combinations
  // are taken in their half-angle forms, which stay fully accurate down to
  // the guards.
  const Cx e1m = std::exp(Cx(0.0, -k1)), e1p = std::exp(Cx(0.0, +k1));
  const Cx e2m = std::exp(Cx(0.0, -k2)), e2p = std::exp(Cx(0.0, +k2));
  const double half1c = 2.0 * std::pow(std::cos(0.5 * k1), 2);  // 1 + c1
  const double half2c = 2.0 * std::pow(std::cos(0.5 * k2), 2);  // 1 + c2
  const double half1s = 2.0 * std::pow(std::sin(0.5 * k1), 2);  // 1 - c1
  const double half2s = 2.0 * std::pow(std::sin(0.5 * k2), 2);  // 1 - c2
  const double n1 = std::sqrt(1.0 / half1c + 1.0 / half2c);
  const double n2 = std::sqrt(1.0 / half1s + 1.0 / half2s);
  const double n34 = std::sqrt(2.0 * (4.0 - (c1 + c2) * (c1 + c2)) /
                               ((c1 - c2) * (c1 - c2)));
  const double norms[4] = {n1, n2, n34, n34};

  for (int s = 0; s < 4; ++s) {
    const Cx lam = lams[s];
    Vec v(4);
    v[0] = 1.0 / (1.0 + e1m * lam);
    v[1] = 1.0 / (1.0 + e1p * lam);
    v[2] = 1.0 / (1.0 + e2m * lam);
    v[3] = 1.0 / (1.0 + e2p * lam);
    bundle.vectors.col(s) = v / norms[s];
  }
  for (int s = 0; s < 4; ++s) bundle.clusters.emplace_back(s, s + 1);
  return bundle;
}

std::array<Vec, 4> diabolical_eigensystem(const DiabolicalApproach& approach) {
  const double ct = std::cos(approach.theta), st = std::sin(approach.theta);
  const double rt2 = std::sqrt(2.0);
  const Cx i2 = Cx(0.0, 1.0 / rt2);
  const Cx i22 = Cx(0.0, 1.0 / (2.0 * rt2));

  std::array<Vec, 4> v;
  v[0] = Vec(4);
  v[0] << 0.5, 0.5, 0.5, 0.5;
  v[1] = Vec(4);
  v[1] << i2 * (-st), i2 * st, i2 * (-ct), i2 * ct;
  v[2] = Vec(4);
  v[2] << i22 * (1.0 - rt2 * ct), i22 * (1.0 + rt2 * ct),
      i22 * (-1.0 + rt2 * st), i22 * (-1.0 - rt2 * st);
  v[3] = Vec(4);
  v[3] << i22 * (-1.0 - rt2 * ct), i22 * (-1.0 + rt2 * ct),
      i22 * (1.0 + rt2 * st), i22 * (1.0 - rt2 * st);
  return v;
}

std::array<double, 4> diabolical_lambdas_from_x(double x, double theta) {
  if (!(x >= -1.0 && x <= 1.0))
    throw invalid_input_error("isotherm coordinate x must lie in [-1, 1]");
  const double s2t = std::sin(2.0 * theta);
  return {(1.0 + x) / 2.0, (1.0 + s2t) * (1.0 - x) / 4.0,
          (1.0 - s2t) * (1.0 - x) / 8.0, (1.0 - s2t) * (1.0 - x) / 8.0};
}

std::array<double, 4> diabolical_lambdas(double gamma, double phi, double theta) {
  return diabolical_lambdas_from_x(isotherm_parameter(gamma, phi), theta);
}

double diabolical_temperature(double gamma, double phi, double theta) {
  const auto lam = diabolical_lambdas(gamma, phi, theta);
  const auto [lo, hi] = std::minmax_element(lam.begin(), lam.end());
  return spectrum_temperature(*lo, *hi);
}

double isotherm_parameter(double gamma, double phi) {
  return std::sin(gamma) * std::cos(phi);
}

std::vector<BlochSample> bloch_isotherm_map(int res_gamma, int res_phi) {
  if (res_gamma < 4 || res_phi < 4)
    throw invalid_input_error("bloch_isotherm_map: resolution must be at least 4");
  std::vector<BlochSample> samples;
  samples.reserve(static_cast<size_t>(res_gamma) * static_cast<size_t>(res_phi));
  const double theta = kPi;
  for (int i = 0; i < res_gamma; ++i) {
    const double gamma = kPi * static_cast<double>(i) / (res_gamma - 1);
    for (int j = 0; j < res_phi; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / res_phi;
      const double x = isotherm_parameter(gamma, phi);
      samples.push_back({gamma, phi, x, diabolical_temperature(gamma, phi, theta)});
    }
  }
  return samples;
}

SpectralBundle grover_branch_order(SpectralBundle bundle) {
  if (bundle.omega.size() != 4)
    throw invalid_input_error("grover_branch_order: bundle is not 4-dimensional");
  for (const auto& [b, e] : bundle.clusters)
    if (e - b != 1)
      throw degeneracy_error("grover_branch_order: degenerate cluster has no branch identity");

  // Pattern: the eigenvalue set is {1, -1, e^{iw}, e^{-iw}}. Nearest-zero
  // eigenphase is the lambda = 1 branch; of the rest, the most negative /
  // most positive sine picks the e^{+-iw} pair and the leftover is -1.
  int s1 = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(bundle.omega[i]) < std::abs(bundle.omega[s1])) s1 = i;
  int s3 = -1, s4 = -1;
  double lo_sin = std::numeric_limits<double>::infinity();
  double hi_sin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    if (i == s1) continue;
    const double s = std::sin(bundle.omega[i]);
    if (s < lo_sin) { lo_sin = s; s3 = i; }
    if (s > hi_sin) { hi_sin = s; s4 = i; }
  }
  int s2 = -1;
  for (int i = 0; i < 4; ++i)
    if (i != s1 && i != s3 && i != s4) s2 = i;
  if (s2 < 0 || s3 == s4)
    throw degeneracy_error("grover_branch_order: eigenvalue pattern is ambiguous");

  const int order[4] = {s1, s2, s3, s4};
  SpectralBundle out{bundle.k, RVec(4), Mat(4, 4), {}, Vec()};
  for (int s = 0; s < 4; ++s) {
    out.omega[s] = bundle.omega[order[s]];
    out.vectors.col(s) = bundle.vectors.col(order[s]);
  }
  for (int s = 0; s < 4; ++s) out.clusters.emplace_back(s, s + 1);
  if (bundle.has_weights()) {
    out.weights = Vec(4);
    for (int s = 0; s < 4; ++s) out.weights[s] = bundle.weights[order[s]];
  }
  return out;
}

SpectralBundle grover_dynamics_bundle(const MomentumVector& k) {
  if (k.dim() != 2)
    throw invalid_input_error("grover_dynamics_bundle: k must be 2-dimensional");
  // G(k) equals the dynamics matrix at -k, so the closed forms are evaluated
  // at the mirrored momentum; the eigenphases are even in k and the bundle
  // is stamped with the requested k.
  try {
    SpectralBundle bundle = closed_eigensystem(-k[0], -k[1]);
    bundle.k = k;
    return bundle;
  } catch (const branch_singularity_error&) {
    const CoinMatrix coin = grover_coin(GroverParams(0.5));
    SpectralBundle bundle = eigensystem(momentum_coin(coin, k));
    bundle.k = k;
    try {
      return grover_branch_order(bundle);
    } catch (const degeneracy_error&) {
      // On an exactly degenerate locus there is no branch identity; the
      // phase-ascending bundle with its honest clusters is the right answer
      // (downstream quadrature only consumes cluster projectors there).
      return bundle;
    }
  }
}

}  // namespace qwalk
