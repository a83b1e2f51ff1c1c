// =============================================================================
// coin_spectral.cpp
// Momentum-space algebra: momentum coin, generic eigensolver, weights,
// phase evolution, and the lattice <-> momentum transforms.
// =============================================================================
#include "qwalk/coin_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qwalk {

double unitarity_residual(const Mat& m) {
  Mat r = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
  return r.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

CoinMatrix::CoinMatrix(int dim_n, Mat entries)
    : dim_n_(dim_n), entries_(std::move(entries)) {
  if (dim_n_ < 1) throw invalid_input_error("coin dimension N must be positive");
  const int m = 2 * dim_n_;
  if (entries_.rows() != m || entries_.cols() != m)
    throw invalid_input_error("coin matrix must be 2N x 2N for dimension N");
  if (unitarity_residual(entries_) > 1e-12)
    throw invalid_input_error("coin matrix is not unitary (residual > 1e-12)");
}

MomentumVector::MomentumVector(RVec components) : k_(std::move(components)) {
  if (k_.size() < 1) throw invalid_input_error("momentum vector must have N >= 1");
  for (int a = 0; a < k_.size(); ++a) {
    if (!(std::abs(k_[a]) <= kPi))
      throw invalid_input_error("momentum components must lie in [-pi, pi]");
  }
}

MomentumVector::MomentumVector(std::initializer_list<double> components)
    : MomentumVector(RVec(Eigen::Map<const RVec>(components.begin(),
                                                 static_cast<long>(components.size())))) {}

// ---------------------------------------------------------------------------
// Momentum coin
// ---------------------------------------------------------------------------

Mat momentum_coin(const CoinMatrix& coin, const MomentumVector& k) {
  if (k.dim() != coin.dim_n())
    throw invalid_input_error("momentum_coin: coin dimension and k dimension differ");
  Mat out = coin.entries();
  for (int alpha = 0; alpha < coin.dim_n(); ++alpha) {
    // row 2*alpha carries eta = +1, row 2*alpha + 1 carries eta = -1
    out.row(2 * alpha) *= std::exp(Cx(0.0, -k[alpha]));
    out.row(2 * alpha + 1) *= std::exp(Cx(0.0, +k[alpha]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generic eigensolver
// ---------------------------------------------------------------------------

namespace {

// Canonical eigenphase from an eigenvalue: C_k phi = lambda phi with
// lambda = e^{-i omega}, omega in (-pi, pi].
double eigenphase_of(Cx lambda) {
  double w = -std::arg(lambda);  // in [-pi, pi)
  if (w == -kPi) w = kPi;
  return w;
}

// Deterministic gauge: rotate so the largest-magnitude component is real
// positive (ties broken toward the lowest index).
void gauge_fix(Vec& v) {
  int best = 0;
  double best_mag = std::abs(v[0]);
  for (int i = 1; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best_mag + 1e-12) {
      best = i;
      best_mag = m;
    }
  }
  if (best_mag > 0.0) v *= std::conj(v[best]) / best_mag;
}

}  // namespace

SpectralBundle eigensystem(const Mat& ck) {
  const int m = static_cast<int>(ck.rows());
  if (ck.cols() != m || m < 2 || m % 2 != 0)
    throw invalid_input_error("eigensystem: matrix must be square of even size 2N");
  if (unitarity_residual(ck) > 1e-8)
    throw invalid_input_error("eigensystem: input is not unitary (residual > 1e-8)");

  // A unitary is normal, so its Hermitian and anti-Hermitian parts commute
  // and share eigenspaces: H has eigenvalues cos(omega), A has sin(omega).
  const Mat h = (ck + ck.adjoint()) / 2.0;
  const Mat a = (ck - ck.adjoint()) / Cx(0.0, 2.0);

  Eigen::SelfAdjointEigenSolver<Mat> hsolve(h);
  if (hsolve.info() != Eigen::Success)
    throw numerical_failure_error("eigensystem: Hermitian-part solve failed");

  // Group the cos values (stage tolerance looser than the final eigenphase
  // clustering so that +-omega pairs always land in one group), then split
  // each group by diagonalizing the projected anti-Hermitian part.
  constexpr double kStageTol = 1e-8;
  std::vector<std::pair<double, int>> entries_tmp;  // (omega, column in work)
  Mat work(m, m);
  int filled = 0;
  int i = 0;
  while (i < m) {
    int j = i + 1;
    while (j < m && hsolve.eigenvalues()[j] - hsolve.eigenvalues()[j - 1] <= kStageTol)
      ++j;
    const int d = j - i;
    Mat basis;
    if (d == 1) {
      basis = hsolve.eigenvectors().middleCols(i, 1);
    } else {
      const Mat q = hsolve.eigenvectors().middleCols(i, d);
      Eigen::SelfAdjointEigenSolver<Mat> asolve(Mat(q.adjoint() * a * q));
      if (asolve.info() != Eigen::Success)
        throw numerical_failure_error("eigensystem: projected solve failed");
      basis = q * asolve.eigenvectors();
    }
    for (int c = 0; c < d; ++c) {
      Vec v = basis.col(c);
      gauge_fix(v);
      const Cx lambda = v.dot(ck * v);  // Rayleigh quotient, v^dag (ck v)
      work.col(filled) = v;
      entries_tmp.emplace_back(eigenphase_of(lambda), filled);
      ++filled;
    }
    i = j;
  }

  // Final ordering and clustering on the eigenphases. Phases are angles, so
  // a degenerate set can straddle the branch cut at +-pi; fold the -pi side
  // up before sorting whenever both edges are occupied.
  constexpr double kClusterTol = 1e-9;
  bool low_edge = false, high_edge = false;
  for (auto& [w, idx] : entries_tmp) {
    low_edge = low_edge || (w <= -kPi + kClusterTol);
    high_edge = high_edge || (w >= kPi - kClusterTol);
  }
  if (low_edge && high_edge) {
    for (auto& [w, idx] : entries_tmp)
      if (w <= -kPi + kClusterTol) w = kPi;  // rounding-level fold
  }
  std::stable_sort(entries_tmp.begin(), entries_tmp.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  SpectralBundle bundle{MomentumVector(RVec::Zero(m / 2)), RVec(m), Mat(m, m), {}, Vec()};
  for (int s = 0; s < m; ++s) {
    bundle.omega[s] = entries_tmp[static_cast<size_t>(s)].first;
    bundle.vectors.col(s) = work.col(entries_tmp[static_cast<size_t>(s)].second);
  }
  int b = 0;
  while (b < m) {
    int e = b + 1;
    while (e < m && bundle.omega[e] - bundle.omega[e - 1] <= kClusterTol) ++e;
    bundle.clusters.emplace_back(b, e);
    b = e;
  }
  return bundle;
}

// ---------------------------------------------------------------------------
// Weights and evolution
// ---------------------------------------------------------------------------

Vec initial_weights(const SpectralBundle& bundle, const Vec& psi0_k) {
  if (psi0_k.size() != bundle.vectors.rows())
    throw invalid_input_error("initial_weights: state dimension mismatch");
  return bundle.vectors.adjoint() * psi0_k;
}

SpectralBundle with_weights(SpectralBundle bundle, const Vec& psi0_k) {
  bundle.weights = initial_weights(bundle, psi0_k);
  return bundle;
}

Vec propagate_momentum(const SpectralBundle& bundle, long t) {
  if (!bundle.has_weights())
    throw invalid_input_error("propagate_momentum: bundle carries no weights");
  if (t < 0) throw invalid_input_error("propagate_momentum: time must be non-negative");
  const int m = static_cast<int>(bundle.omega.size());
  Vec coeff(m);
  for (int s = 0; s < m; ++s)
    coeff[s] = std::polar(1.0, -bundle.omega[s] * static_cast<double>(t)) *
               bundle.weights[s];
  return bundle.vectors * coeff;
}

// ---------------------------------------------------------------------------
// Discrete Fourier transforms
// ---------------------------------------------------------------------------

double MomentumField::node(int j) const {
  return -kPi + (2.0 * kPi / points_per_axis) * (j + 0.5);
}

long MomentumField::total_nodes() const {
  long n = 1;
  for (int a = 0; a < dim_n; ++a) n *= points_per_axis;
  return n;
}

MomentumVector MomentumField::node_k(long flat) const {
  RVec k(dim_n);
  for (int a = dim_n - 1; a >= 0; --a) {
    k[a] = node(static_cast<int>(flat % points_per_axis));
    flat /= points_per_axis;
  }
  return MomentumVector(k);
}

Vec dft_forward(const WalkerState& state, const MomentumVector& k) {
  if (k.dim() != state.dim_n())
    throw invalid_input_error("dft_forward: dimension mismatch");
  if (state.norm_squared() == 0.0)
    throw invalid_input_error("dft_forward: empty state");
  const int nc = state.coin_size();
  Vec out = Vec::Zero(nc);
  for (long site = 0; site < state.volume(); ++site) {
    const std::vector<long> x = state.site_coords(site);
    double kx = 0.0;
    for (int a = 0; a < state.dim_n(); ++a) kx += k[a] * static_cast<double>(x[a]);
    const Cx phase = std::polar(1.0, -kx);
    for (int c = 0; c < nc; ++c) out[c] += phase * state.at(c, site);
  }
  return out;
}

namespace {

// Applies a dense 1D transform along one axis of a row-major tensor:
// out[o, j, i] = sum_x T(j, x) in[o, x, i]. Dimensions are replaced in place.
std::vector<Cx> contract_axis(const std::vector<Cx>& in, std::vector<long>& dims,
                              int axis, const Mat& t) {
  long outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= dims[static_cast<size_t>(a)];
  for (size_t a = static_cast<size_t>(axis) + 1; a < dims.size(); ++a)
    inner *= dims[a];
  const long din = dims[static_cast<size_t>(axis)];
  const long dout = t.rows();
  std::vector<Cx> out(static_cast<size_t>(outer * dout * inner), Cx(0, 0));
  for (long o = 0; o < outer; ++o)
    for (long j = 0; j < dout; ++j) {
      Cx* dst = out.data() + (o * dout + j) * inner;
      for (long x = 0; x < din; ++x) {
        const Cx w = t(j, x);
        const Cx* src = in.data() + (o * din + x) * inner;
        for (long i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  dims[static_cast<size_t>(axis)] = dout;
  return out;
}

}  // namespace

MomentumField dft_forward_grid(const WalkerState& state, int points_per_axis) {
  if (points_per_axis < 2)
    throw invalid_input_error("dft_forward_grid: grid needs at least 2 points per axis");
  const int n = state.dim_n();
  const int nc = state.coin_size();
  const int m = points_per_axis;

  MomentumField field;
  field.dim_n = n;
  field.points_per_axis = m;
  const long nodes = field.total_nodes();
  field.values.assign(static_cast<size_t>(nodes), Vec::Zero(nc));

  for (int c = 0; c < nc; ++c) {
    std::vector<long> dims(static_cast<size_t>(n));
    std::vector<Cx> plane(static_cast<size_t>(state.volume()));
    for (long site = 0; site < state.volume(); ++site)
      plane[static_cast<size_t>(site)] = state.at(c, site);
    for (int a = 0; a < n; ++a)
      dims[static_cast<size_t>(a)] = state.hi()[a] - state.lo()[a] + 1;
    for (int a = 0; a < n; ++a) {
      Mat t(m, dims[static_cast<size_t>(a)]);
      for (int j = 0; j < m; ++j)
        for (long xi = 0; xi < t.cols(); ++xi)
          t(j, xi) = std::polar(
              1.0, -field.node(j) * static_cast<double>(state.lo()[a] + xi));
      plane = contract_axis(plane, dims, a, t);
    }
    for (long node = 0; node < nodes; ++node)
      field.values[static_cast<size_t>(node)][c] = plane[static_cast<size_t>(node)];
  }
  return field;
}

Vec dft_inverse(const MomentumField& field, const std::vector<long>& x) {
  if (static_cast<int>(x.size()) != field.dim_n)
    throw invalid_input_error("dft_inverse: dimension mismatch");
  if (field.values.empty()) throw invalid_input_error("dft_inverse: empty field");
  const int nc = static_cast<int>(field.values.front().size());
  const long nodes = field.total_nodes();
  const double cell = std::pow(1.0 / field.points_per_axis, field.dim_n);
  Vec out = Vec::Zero(nc);
  for (long node = 0; node < nodes; ++node) {
    const MomentumVector k = field.node_k(node);
    double kx = 0.0;
    for (int a = 0; a < field.dim_n; ++a) kx += k[a] * static_cast<double>(x[a]);
    out += std::polar(1.0, kx) * field.values[static_cast<size_t>(node)];
  }
  return cell * out;
}

WalkerState dft_inverse_box(const MomentumField& field, const std::vector<long>& lo,
                            const std::vector<long>& hi) {
  if (static_cast<int>(lo.size()) != field.dim_n || lo.size() != hi.size())
    throw invalid_input_error("dft_inverse_box: dimension mismatch");
  const int n = field.dim_n;
  const int m = field.points_per_axis;
  const int nc = static_cast<int>(field.values.front().size());
  const double cell = std::pow(1.0 / m, n);

  std::map<std::vector<long>, Vec> amplitudes;  // assembled densely below
  // Transform each component plane from the node tensor to the box tensor.
  std::vector<std::vector<Cx>> planes(static_cast<size_t>(nc));
  std::vector<long> box_dims(static_cast<size_t>(n));
  long volume = 1;
  for (int a = 0; a < n; ++a) {
    box_dims[static_cast<size_t>(a)] = hi[a] - lo[a] + 1;
    if (box_dims[static_cast<size_t>(a)] < 1)
      throw invalid_input_error("dft_inverse_box: empty box");
    volume *= box_dims[static_cast<size_t>(a)];
  }
  for (int c = 0; c < nc; ++c) {
    std::vector<long> dims(static_cast<size_t>(n), m);
    std::vector<Cx> plane(field.values.size());
    for (size_t node = 0; node < field.values.size(); ++node)
      plane[node] = field.values[node][c];
    for (int a = 0; a < n; ++a) {
      Mat t(box_dims[static_cast<size_t>(a)], m);
      for (long xi = 0; xi < t.rows(); ++xi)
        for (int j = 0; j < m; ++j)
          t(xi, j) =
              std::polar(1.0, field.node(j) * static_cast<double>(lo[a] + xi));
      plane = contract_axis(plane, dims, a, t);
    }
    planes[static_cast<size_t>(c)] = std::move(plane);
  }
  for (long site = 0; site < volume; ++site) {
    std::vector<long> x(static_cast<size_t>(n));
    long rem = site;
    for (int a = n - 1; a >= 0; --a) {
      x[static_cast<size_t>(a)] = lo[a] + rem % box_dims[static_cast<size_t>(a)];
      rem /= box_dims[static_cast<size_t>(a)];
    }
    Vec v(nc);
    for (int c = 0; c < nc; ++c)
      v[c] = cell * planes[static_cast<size_t>(c)][static_cast<size_t>(site)];
    amplitudes.emplace(std::move(x), std::move(v));
  }
  return WalkerState::from_amplitudes_unchecked(n, amplitudes);
}

}  // namespace qwalk
