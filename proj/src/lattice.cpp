// =============================================================================
// lattice.cpp
// Position-space walk evolution on a growing dense bounding box.
// =============================================================================
#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qwalk/parallel.hpp"

namespace qwalk {

namespace {

long box_volume(const std::vector<long>& lo, const std::vector<long>& hi) {
  long v = 1;
  for (size_t a = 0; a < lo.size(); ++a) {
    if (hi[a] < lo[a]) throw invalid_input_error("lattice box has empty extent");
    v *= hi[a] - lo[a] + 1;
  }
  return v;
}

// Row-major strides, axis 0 slowest.
std::vector<long> box_strides(const std::vector<long>& lo,
                              const std::vector<long>& hi) {
  std::vector<long> strides(lo.size());
  long s = 1;
  for (size_t a = lo.size(); a-- > 0;) {
    strides[a] = s;
    s *= hi[a] - lo[a] + 1;
  }
  return strides;
}

}  // namespace

WalkerState::WalkerState(int dim_n, std::vector<long> lo, std::vector<long> hi)
    : dim_n_(dim_n), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (dim_n_ < 1) throw invalid_input_error("lattice dimension N must be positive");
  if (static_cast<int>(lo_.size()) != dim_n_ ||
      static_cast<int>(hi_.size()) != dim_n_)
    throw invalid_input_error("lattice box bounds must have N entries");
  volume_ = box_volume(lo_, hi_);
  amp_.assign(static_cast<size_t>(2 * dim_n_) * static_cast<size_t>(volume_),
              Cx(0.0, 0.0));
}

WalkerState::WalkerState(int dim_n)
    : WalkerState(dim_n, std::vector<long>(static_cast<size_t>(dim_n), 0),
                  std::vector<long>(static_cast<size_t>(dim_n), 0)) {}

WalkerState WalkerState::from_amplitudes_unchecked(
    int dim_n, const std::map<std::vector<long>, Vec>& amplitudes) {
  if (amplitudes.empty())
    throw invalid_input_error("from_amplitudes: amplitude map is empty");
  std::vector<long> lo(static_cast<size_t>(dim_n),
                       std::numeric_limits<long>::max());
  std::vector<long> hi(static_cast<size_t>(dim_n),
                       std::numeric_limits<long>::min());
  for (const auto& [x, v] : amplitudes) {
    if (static_cast<int>(x.size()) != dim_n)
      throw invalid_input_error("from_amplitudes: lattice point of wrong dimension");
    if (v.size() != 2 * dim_n)
      throw invalid_input_error("from_amplitudes: amplitude vector must have 2N entries");
    for (int a = 0; a < dim_n; ++a) {
      lo[static_cast<size_t>(a)] = std::min(lo[static_cast<size_t>(a)], x[static_cast<size_t>(a)]);
      hi[static_cast<size_t>(a)] = std::max(hi[static_cast<size_t>(a)], x[static_cast<size_t>(a)]);
    }
  }
  WalkerState state(dim_n, std::move(lo), std::move(hi));
  const std::vector<long> strides = box_strides(state.lo_, state.hi_);
  for (const auto& [x, v] : amplitudes) {
    long site = 0;
    for (int a = 0; a < dim_n; ++a)
      site += (x[static_cast<size_t>(a)] - state.lo_[static_cast<size_t>(a)]) *
              strides[static_cast<size_t>(a)];
    for (int c = 0; c < 2 * dim_n; ++c) state.at(c, site) = v[c];
  }
  return state;
}

WalkerState WalkerState::from_amplitudes(
    int dim_n, const std::map<std::vector<long>, Vec>& amplitudes) {
  WalkerState state = from_amplitudes_unchecked(dim_n, amplitudes);
  if (std::abs(state.norm_squared() - 1.0) > 1e-10)
    throw invalid_input_error("from_amplitudes: state is not normalized");
  return state;
}

Vec WalkerState::amplitude(const std::vector<long>& x) const {
  if (static_cast<int>(x.size()) != dim_n_)
    throw invalid_input_error("amplitude: lattice point of wrong dimension");
  Vec v = Vec::Zero(2 * dim_n_);
  long site = 0;
  const std::vector<long> strides = box_strides(lo_, hi_);
  for (int a = 0; a < dim_n_; ++a) {
    const long xa = x[static_cast<size_t>(a)];
    if (xa < lo_[static_cast<size_t>(a)] || xa > hi_[static_cast<size_t>(a)])
      return v;
    site += (xa - lo_[static_cast<size_t>(a)]) * strides[static_cast<size_t>(a)];
  }
  for (int c = 0; c < 2 * dim_n_; ++c) v[c] = at(c, site);
  return v;
}

std::vector<long> WalkerState::site_coords(long site) const {
  std::vector<long> x(static_cast<size_t>(dim_n_));
  for (int a = dim_n_ - 1; a >= 0; --a) {
    const long extent = hi_[static_cast<size_t>(a)] - lo_[static_cast<size_t>(a)] + 1;
    x[static_cast<size_t>(a)] = lo_[static_cast<size_t>(a)] + site % extent;
    site /= extent;
  }
  return x;
}

double WalkerState::norm_squared() const {
  const long n = static_cast<long>(amp_.size());
  return blocked_reduce<double>(
      n, 0.0,
      [this](long i, double& acc) { acc += std::norm(amp_[static_cast<size_t>(i)]); },
      [](double& into, const double& part) { into += part; });
}

void WalkerState::normalize() {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw invalid_input_error("normalize: state has zero norm");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amp_) a *= inv;
}

void WalkerState::prune(double threshold) {
  // Per-axis surviving range: smallest box containing every site whose
  // largest component amplitude reaches the threshold.
  std::vector<long> keep_lo = hi_, keep_hi = lo_;
  bool any = false;
  for (long site = 0; site < volume_; ++site) {
    double peak = 0.0;
    for (int c = 0; c < 2 * dim_n_; ++c)
      peak = std::max(peak, std::abs(at(c, site)));
    if (peak < threshold) continue;
    any = true;
    const std::vector<long> x = site_coords(site);
    for (int a = 0; a < dim_n_; ++a) {
      keep_lo[static_cast<size_t>(a)] = std::min(keep_lo[static_cast<size_t>(a)], x[static_cast<size_t>(a)]);
      keep_hi[static_cast<size_t>(a)] = std::max(keep_hi[static_cast<size_t>(a)], x[static_cast<size_t>(a)]);
    }
  }
  if (!any) return;  // nothing reaches the threshold: leave the state alone
  if (keep_lo == lo_ && keep_hi == hi_) return;

  WalkerState trimmed(dim_n_, keep_lo, keep_hi);
  const std::vector<long> old_strides = box_strides(lo_, hi_);
  for (long site = 0; site < trimmed.volume_; ++site) {
    const std::vector<long> x = trimmed.site_coords(site);
    long old_site = 0;
    for (int a = 0; a < dim_n_; ++a)
      old_site += (x[static_cast<size_t>(a)] - lo_[static_cast<size_t>(a)]) *
                  old_strides[static_cast<size_t>(a)];
    for (int c = 0; c < 2 * dim_n_; ++c)
      trimmed.at(c, site) = at(c, old_site);
  }
  *this = std::move(trimmed);
}

WalkerState step(const WalkerState& state, const CoinMatrix& coin) {
  if (coin.dim_n() != state.dim_n())
    throw invalid_input_error("step: coin dimension and state dimension differ");
  const int n = state.dim_n_;
  const int nc = 2 * n;

  // The support grows by one site per axis per step.
  std::vector<long> lo = state.lo_, hi = state.hi_;
  for (int a = 0; a < n; ++a) {
    --lo[static_cast<size_t>(a)];
    ++hi[static_cast<size_t>(a)];
  }
  WalkerState next(n, std::move(lo), std::move(hi));

  const std::vector<long> old_strides = box_strides(state.lo_, state.hi_);
  const Mat& c = coin.entries();

  // Pure gather over target sites: component (alpha, eta) at x reads the
  // coin-mixed amplitudes from x - eta u_alpha. No write races, so the
  // OpenMP loop is bitwise deterministic.
  const long target_volume = next.volume_;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long site = 0; site < target_volume; ++site) {
    const std::vector<long> x = next.site_coords(site);
    std::vector<long> src(static_cast<size_t>(n));
    for (int comp = 0; comp < nc; ++comp) {
      const int axis = comp / 2;
      const long shift = (comp % 2 == 0) ? +1 : -1;  // eta
      bool inside = true;
      long old_site = 0;
      for (int a = 0; a < n; ++a) {
        long xa = x[static_cast<size_t>(a)];
        if (a == axis) xa -= shift;
        if (xa < state.lo_[static_cast<size_t>(a)] ||
            xa > state.hi_[static_cast<size_t>(a)]) {
          inside = false;
          break;
        }
        old_site += (xa - state.lo_[static_cast<size_t>(a)]) *
                    old_strides[static_cast<size_t>(a)];
      }
      if (!inside) continue;
      Cx sum(0.0, 0.0);
      for (int comp_src = 0; comp_src < nc; ++comp_src)
        sum += c(comp, comp_src) * state.at(comp_src, old_site);
      next.at(comp, site) = sum;
    }
  }
  return next;
}

WalkerState evolve(const WalkerState& state, const CoinMatrix& coin, long t) {
  if (t < 0) throw invalid_input_error("evolve: time must be non-negative");
  WalkerState current = state;
  for (long i = 0; i < t; ++i) {
    current = step(current, coin);
    current.prune();
  }
  return current;
}

std::map<std::vector<long>, double> position_distribution(const WalkerState& state) {
  std::map<std::vector<long>, double> dist;
  for (long site = 0; site < state.volume(); ++site) {
    double p = 0.0;
    for (int c = 0; c < state.coin_size(); ++c) p += std::norm(state.at(c, site));
    if (p > 0.0) dist.emplace(state.site_coords(site), p);
  }
  return dist;
}

Mat reduced_density(const WalkerState& state) {
  const int nc = state.coin_size();
  const Mat zero = Mat::Zero(nc, nc);
  return blocked_reduce<Mat>(
      state.volume(), zero,
      [&state, nc](long site, Mat& acc) {
        // rank-1 update psi_x psi_x^dagger, written out so the matrix stays
        // exactly Hermitian in floating point (a_ij = conj(a_ji) by IEEE).
        for (int row = 0; row < nc; ++row) {
          const Cx vr = state.at(row, site);
          for (int col = 0; col < nc; ++col)
            acc(row, col) += vr * std::conj(state.at(col, site));
        }
      },
      [](Mat& into, const Mat& part) { into += part; });
}

Mat time_averaged_reduced_density(const WalkerState& state0, const CoinMatrix& coin,
                                  long t_max, long t_burn) {
  if (t_burn < 0 || t_max <= t_burn)
    throw invalid_input_error("time_averaged_reduced_density: need 0 <= t_burn < t_max");
  const int nc = state0.coin_size();
  Mat acc = Mat::Zero(nc, nc);
  WalkerState current = state0;
  for (long t = 1; t <= t_max; ++t) {
    current = step(current, coin);
    current.prune();
    if (t > t_burn) acc += reduced_density(current);
  }
  return acc / static_cast<double>(t_max - t_burn);
}

}  // namespace qwalk
