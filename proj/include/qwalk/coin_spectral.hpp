// =============================================================================
// coin_spectral.hpp
// Momentum-space algebra for the coined walk in arbitrary dimension N.
//
// Under the forward transform psi~(k) = sum_x e^{-i k.x} psi_x, one walk step
// becomes multiplication by the momentum coin
//
//     C_k = D(k) C,   D(k) = diag over (alpha,eta) of e^{-i eta k_alpha},
//
// i.e. row (alpha,eta) of C picks up the phase e^{-i eta k_alpha}. Its
// eigensystem C_k phi = e^{-i omega} phi (omega real, the eigenphase) turns
// time evolution into pure phases: psi~(k,t) = sum_s e^{-i omega_s t} f_s phi_s
// with weights f_s = <phi_s | psi~(k,0)>.
// =============================================================================
#pragma once

#include <utility>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// ---------------------------------------------------------------------------
// SpectralBundle: the eigensystem of one C_k, optionally with the weights of
// an initial state attached.
//
// Eigenphases omega_s lie in (-pi, pi]. Entries are sorted by eigenphase
// ascending unless a closed-form family pins its own branch order (the 2D
// Grover bundle does). `clusters` lists [begin, end) runs of entries whose
// eigenphases coincide within 1e-9; the basis inside a cluster is
// solver-arbitrary, so downstream code may rely only on cluster projectors.
// ---------------------------------------------------------------------------
struct SpectralBundle {
  MomentumVector k;
  RVec omega;                                 // eigenphases, length 2N
  Mat vectors;                                // columns phi^(s), orthonormal
  std::vector<std::pair<int, int>> clusters;  // degenerate runs
  Vec weights;                                // f^(s); size 0 until attached

  bool has_weights() const { return weights.size() != 0; }
};

// Row (alpha,eta) of the result is e^{-i eta k_alpha} times row (alpha,eta)
// of the coin. Throws invalid_input_error on dimension mismatch.
Mat momentum_coin(const CoinMatrix& coin, const MomentumVector& k);

// Generic dense eigensolver for a unitary C_k (unitarity residual above 1e-8
// throws invalid_input_error). A unitary matrix is normal, so it is split
// into commuting Hermitian parts H = (C+C^dag)/2 and A = (C-C^dag)/(2i)
// whose eigenvalues are cos(omega) and sin(omega): H is diagonalized first,
// then A is diagonalized inside each cos-cluster. Both stages use Hermitian
// solvers, so the full basis is orthonormal by construction, degeneracies
// included. Eigenvector phases are gauge-fixed (largest component made real
// positive) to keep results deterministic.
SpectralBundle eigensystem(const Mat& ck);

// Weights f^(s) = <phi^(s)|psi0_k>. Parseval: sum |f|^2 = |psi0_k|^2.
Vec initial_weights(const SpectralBundle& bundle, const Vec& psi0_k);

// Convenience: bundle with weights attached.
SpectralBundle with_weights(SpectralBundle bundle, const Vec& psi0_k);

// sum_s e^{-i omega_s t} f_s phi_s. Requires weights.
Vec propagate_momentum(const SpectralBundle& bundle, long t);

// ---------------------------------------------------------------------------
// Discrete Fourier transforms between the lattice and the momentum grid.
// The uniform grid convention matches the quadrature grid: M midpoint nodes
// per axis, k_j = -pi + (2pi/M)(j + 1/2), so the inverse Riemann sum carries
// cell weight (2pi/M)^N / (2pi)^N = 1/M^N per node.
// ---------------------------------------------------------------------------
struct MomentumField {
  int dim_n = 0;
  int points_per_axis = 0;
  std::vector<Vec> values;  // one 2N-vector per node, row-major node order

  double node(int j) const;
  long total_nodes() const;
  MomentumVector node_k(long flat) const;
};

// Forward transform at a single k: sum over the state's support.
// Throws invalid_input_error on an empty (all-zero) state.
Vec dft_forward(const WalkerState& state, const MomentumVector& k);

// Forward transform on the full midpoint grid (separable matrix form; used
// by the spectral-vs-direct oracles where per-node sums would be too slow).
MomentumField dft_forward_grid(const WalkerState& state, int points_per_axis);

// Inverse transform at a single lattice point x.
Vec dft_inverse(const MomentumField& field, const std::vector<long>& x);

// Inverse transform onto a dense box [lo, hi] (separable matrix form).
WalkerState dft_inverse_box(const MomentumField& field, const std::vector<long>& lo,
                            const std::vector<long>& hi);

}  // namespace qwalk
