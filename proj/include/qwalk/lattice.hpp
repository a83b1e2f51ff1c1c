// =============================================================================
// lattice.hpp
// Direct position-space evolution of the coined walk on the infinite lattice
// Z^N — the independent oracle against which the spectral machinery is
// validated.
//
// One step applies the coin to every site and then shifts each chirality
// component one site along its axis:
//
//     psi_{x,t+1}^{(alpha,eta)} = sum_{a',e'} C^{(alpha,eta)}_{(a',e')}
//                                   psi_{x - eta u_alpha, t}^{(a',e')}
//
// so component (1,+) moves +1 along axis 1, (1,-) moves -1, and so on.
// The state is stored densely on its bounding box, which grows with the
// light cone (one site per axis per step) and is trimmed when boundary
// slabs fall below the pruning threshold 1e-14 in amplitude.
// =============================================================================
#pragma once

#include <map>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

class WalkerState {
 public:
  // Empty state of dimension N covering only the origin, all amplitudes 0.
  explicit WalkerState(int dim_n);

  // Builds a state from an explicit amplitude map and validates the
  // normalization sum_x <psi_x|psi_x> = 1 within 1e-10.
  static WalkerState from_amplitudes(
      int dim_n, const std::map<std::vector<long>, Vec>& amplitudes);

  // Unchecked variant for internal constructions that normalize explicitly.
  static WalkerState from_amplitudes_unchecked(
      int dim_n, const std::map<std::vector<long>, Vec>& amplitudes);

  int dim_n() const { return dim_n_; }
  int coin_size() const { return 2 * dim_n_; }
  const std::vector<long>& lo() const { return lo_; }
  const std::vector<long>& hi() const { return hi_; }
  long volume() const { return volume_; }

  // Amplitude vector at a lattice point (zero vector outside the box).
  Vec amplitude(const std::vector<long>& x) const;

  // Direct access for kernels: component c, flattened site index within the
  // box (row-major over axes, axis 0 slowest).
  Cx& at(int c, long site) { return amp_[static_cast<size_t>(c) * volume_ + site]; }
  const Cx& at(int c, long site) const {
    return amp_[static_cast<size_t>(c) * volume_ + site];
  }

  std::vector<long> site_coords(long site) const;  // box-relative -> absolute
  double norm_squared() const;
  void normalize();

  // Drops boundary slabs whose largest amplitude is below `threshold`.
  // The removed probability mass is bounded by (sites in slab) * threshold^2
  // per slab and is charged against the norm-conservation budget.
  void prune(double threshold = 1e-14);

 private:
  WalkerState(int dim_n, std::vector<long> lo, std::vector<long> hi);
  friend WalkerState step(const WalkerState&, const CoinMatrix&);
  friend class GaussianBuilder;

  int dim_n_;
  std::vector<long> lo_, hi_;  // inclusive bounds per axis
  long volume_;
  std::vector<Cx> amp_;  // component-major: amp_[c * volume + site]
};

// One application of the walk map. Parallel over target sites (pure gather,
// no reduction), so the result is bitwise deterministic for any worker count.
WalkerState step(const WalkerState& state, const CoinMatrix& coin);

// t-fold step.
WalkerState evolve(const WalkerState& state, const CoinMatrix& coin, long t);

// P_x = <psi_x|psi_x>; sums to 1 within 1e-10 for a normalized state.
std::map<std::vector<long>, double> position_distribution(const WalkerState& state);

// Chirality density matrix rho_c = sum_x psi_x psi_x^dagger (partial trace
// over position). Hermitian, PSD, unit trace.
Mat reduced_density(const WalkerState& state);

// Arithmetic mean of reduced_density over t in (t_burn, t_max]. The burn-in
// skips the transient where the oscillatory cross terms have not yet
// dephased; the Cesaro mean suppresses what remains of them.
Mat time_averaged_reduced_density(const WalkerState& state0, const CoinMatrix& coin,
                                  long t_max, long t_burn);

}  // namespace qwalk
