// =============================================================================
// asymptotics.cpp
// Brillouin-zone quadrature of the asymptotic reduced density matrix.
// =============================================================================
#include "qwalk/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qwalk/grover2d.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

QuadratureGrid::QuadratureGrid(int dim_n, int points_per_axis)
    : dim_n_(dim_n), m_(points_per_axis) {
  if (dim_n_ < 1) throw invalid_input_error("QuadratureGrid: dimension N must be positive");
  if (m_ < 4 || m_ % 4 != 0)
    throw invalid_input_error("QuadratureGrid: points per axis must be a positive multiple of 4");
}

long QuadratureGrid::total_nodes() const {
  long n = 1;
  for (int a = 0; a < dim_n_; ++a) n *= m_;
  return n;
}

double QuadratureGrid::node(int j) const {
  return -kPi + (2.0 * kPi / m_) * (j + 0.5);
}

MomentumVector QuadratureGrid::node_k(long flat) const {
  RVec k(dim_n_);
  for (int a = dim_n_ - 1; a >= 0; --a) {
    k[a] = node(static_cast<int>(flat % m_));
    flat /= m_;
  }
  return MomentumVector(std::move(k));
}

double QuadratureGrid::node_weight() const {
  return std::pow(1.0 / m_, dim_n_);
}

// ---------------------------------------------------------------------------
// Initial conditions
// ---------------------------------------------------------------------------

AsymptoticIC AsymptoticIC::gaussian(double sigma, std::vector<double> k0,
                                    BlochPoint bloch) {
  if (!(sigma > 0.0)) throw invalid_input_error("AsymptoticIC: sigma must be positive");
  for (double ka : k0)
    if (!(std::abs(ka) < kPi))
      throw invalid_input_error("AsymptoticIC: k0 must be strictly inside (-pi, pi)");
  AsymptoticIC ic{Kind::gaussian, bloch, sigma, std::move(k0)};
  return ic;
}

AsymptoticIC AsymptoticIC::nonseparable(NonSeparableFamily family, BlochPoint bloch) {
  AsymptoticIC ic{family == NonSeparableFamily::I ? Kind::nonseparable_1
                                                  : Kind::nonseparable_2,
                  bloch, 0.0, {}};
  return ic;
}

// ---------------------------------------------------------------------------
// Bundle provider
// ---------------------------------------------------------------------------

BundleProvider::BundleProvider(const CoinMatrix& coin_in) : coin(coin_in) {
  grover_half =
      coin.dim_n() == 2 &&
      (coin.entries() - grover_coin(GroverParams(0.5)).entries())
              .cwiseAbs()
              .maxCoeff() <= 1e-12;
}

SpectralBundle BundleProvider::at(const MomentumVector& k) const {
  if (grover_half) return grover_dynamics_bundle(k);
  SpectralBundle bundle = eigensystem(momentum_coin(coin, k));
  bundle.k = k;
  return bundle;
}

// ---------------------------------------------------------------------------
// Node-level helpers
// ---------------------------------------------------------------------------

Vec ic_momentum_state(const AsymptoticIC& ic, const SpectralBundle& bundle) {
  const int n = static_cast<int>(bundle.omega.size()) / 2;
  switch (ic.kind) {
    case AsymptoticIC::Kind::gaussian:
      // The packet factorizes: the profile carries the k dependence (it
      // lands in the node weights), the chirality factor is k-independent.
      return chi_vector(n, ic.bloch);
    case AsymptoticIC::Kind::nonseparable_1:
      return nonseparable_momentum_state(NonSeparableFamily::I, ic.bloch, bundle);
    case AsymptoticIC::Kind::nonseparable_2:
      return nonseparable_momentum_state(NonSeparableFamily::II, ic.bloch, bundle);
  }
  throw invalid_input_error("ic_momentum_state: unknown initial-condition kind");
}

std::vector<double> ic_node_weights(const AsymptoticIC& ic, const QuadratureGrid& grid) {
  const long nodes = grid.total_nodes();
  std::vector<double> weights(static_cast<size_t>(nodes), 1.0);
  if (ic.kind == AsymptoticIC::Kind::gaussian) {
    if (static_cast<int>(ic.k0.size()) != grid.dim_n())
      throw invalid_input_error("ic_node_weights: k0 dimension does not match the grid");
    RVec k0v(grid.dim_n());
    for (int a = 0; a < grid.dim_n(); ++a) k0v[a] = ic.k0[static_cast<size_t>(a)];
    const MomentumVector k0(std::move(k0v));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long j = 0; j < nodes; ++j) {
      const Cx profile = gaussian_momentum_profile(ic.sigma, k0, grid.node_k(j));
      weights[static_cast<size_t>(j)] = std::norm(profile);
    }
  }
  // Serial accumulation and division keep the weights bitwise deterministic.
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0))
    throw numerical_failure_error("ic_node_weights: profile mass vanished on the grid");
  for (double& w : weights) w /= total;
  return weights;
}

// ---------------------------------------------------------------------------
// Quadrature loops
// ---------------------------------------------------------------------------

namespace {

// acc += scale * y y^dagger. The product is formed before the real scale
// factor touches it, so entries (r,c) and (c,r) see mirror-image rounding
// and the accumulator stays exactly Hermitian in floating point.
void add_scaled_outer(Mat& acc, const Vec& y, double scale) {
  const int nc = static_cast<int>(y.size());
  for (int r = 0; r < nc; ++r)
    for (int c = 0; c < nc; ++c) acc(r, c) += scale * (y[r] * std::conj(y[c]));
}

}  // namespace

Mat rho_c_at_time(const AsymptoticIC& ic, const CoinMatrix& coin,
                  const QuadratureGrid& grid, long t) {
  if (t < 0) throw invalid_input_error("rho_c_at_time: time must be non-negative");
  if (grid.dim_n() != coin.dim_n())
    throw invalid_input_error("rho_c_at_time: grid and coin dimensions differ");
  const BundleProvider provider(coin);
  const std::vector<double> weights = ic_node_weights(ic, grid);
  const int nc = coin.size();
  const Mat zero = Mat::Zero(nc, nc);
  return blocked_reduce<Mat>(
      grid.total_nodes(), zero,
      [&](long j, Mat& acc) {
        const SpectralBundle bundle = provider.at(grid.node_k(j));
        const Vec psi = ic_momentum_state(ic, bundle);
        const Vec psi_t = propagate_momentum(with_weights(bundle, psi), t);
        add_scaled_outer(acc, psi_t, weights[static_cast<size_t>(j)]);
      },
      [](Mat& into, const Mat& part) { into += part; });
}

Mat asymptotic_density(const AsymptoticIC& ic, const CoinMatrix& coin,
                       const QuadratureGrid& grid) {
  if (grid.dim_n() != coin.dim_n())
    throw invalid_input_error("asymptotic_density: grid and coin dimensions differ");
  const BundleProvider provider(coin);
  const std::vector<double> weights = ic_node_weights(ic, grid);
  const int nc = coin.size();
  const Mat zero = Mat::Zero(nc, nc);
  return blocked_reduce<Mat>(
      grid.total_nodes(), zero,
      [&](long j, Mat& acc) {
        const SpectralBundle bundle = provider.at(grid.node_k(j));
        const Vec psi = ic_momentum_state(ic, bundle);
        const double w = weights[static_cast<size_t>(j)];
        // Cross terms between distinct eigenphases dephase; within a
        // degenerate cluster they survive, so the projected outer product
        // keeps the full cluster block.
        for (const auto& [b, e] : bundle.clusters) {
          const auto basis = bundle.vectors.middleCols(b, e - b);
          const Vec projected = basis * (basis.adjoint() * psi);
          add_scaled_outer(acc, projected, w);
        }
      },
      [](Mat& into, const Mat& part) { into += part; });
}

LambdaSpectrum lambda_spectrum(const Mat& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1)
    throw invalid_input_error("lambda_spectrum: matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw numerical_failure_error("lambda_spectrum: matrix is not Hermitian within 1e-12");
  Eigen::SelfAdjointEigenSolver<Mat> solver(rho);
  if (solver.info() != Eigen::Success)
    throw numerical_failure_error("lambda_spectrum: eigensolve failed");
  LambdaSpectrum spectrum;
  spectrum.basis = solver.eigenvectors();
  spectrum.values.resize(static_cast<size_t>(rho.rows()));
  for (int i = 0; i < rho.rows(); ++i) {
    double v = solver.eigenvalues()[i];
    if (v < 0.0) {
      if (v < -1e-10)
        throw numerical_failure_error("lambda_spectrum: eigenvalue below -1e-10");
      v = 0.0;
    }
    spectrum.values[static_cast<size_t>(i)] = v;
  }
  return spectrum;
}

// ---------------------------------------------------------------------------
// Family-I closed forms
// ---------------------------------------------------------------------------

Mat nonseparable_I_closed_density(double gamma) {
  const double a = (1.0 - 4.0 / kPi) * std::cos(gamma);
  const double b = (1.0 - 2.0 / kPi) * std::cos(gamma);
  Mat rho(4, 4);
  rho << 1.0, a, b, b,
         a, 1.0, b, b,
         b, b, 1.0, a,
         b, b, a, 1.0;
  return 0.25 * rho;
}

TemperaturePair nonseparable_I_temperature(double gamma, const QuadratureGrid& grid) {
  // Closed printed formula. Its ratio argument degenerates at the ends:
  // gamma = 0 sends it to +inf (T = 0), cos gamma = 0 sends it to 1 (T = +inf).
  const double num = 1.0 + (4.0 / kPi - 1.0) * std::cos(gamma);
  const double den = 1.0 - std::cos(gamma);
  double printed;
  if (den <= 0.0) {
    printed = 0.0;
  } else {
    const double l = std::abs(std::log(num / den));
    printed = (l == 0.0) ? std::numeric_limits<double>::infinity() : 2.0 / l;
  }

  const CoinMatrix coin = grover_coin(GroverParams(0.5));
  const AsymptoticIC ic = AsymptoticIC::nonseparable(
      NonSeparableFamily::I, BlochPoint(gamma, 0.0));
  const LambdaSpectrum spectrum = lambda_spectrum(asymptotic_density(ic, coin, grid));
  const double oracle =
      spectrum_temperature(spectrum.values.front(), spectrum.values.back());
  return {printed, oracle};
}

}  // namespace qwalk
