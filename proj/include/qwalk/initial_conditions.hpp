// =============================================================================
// initial_conditions.hpp
// The three initial-state families:
//
//   1. Separable: Gaussian (or plane-wave-limit) position profile tensor a
//      Bloch-parametrized chirality vector chi(gamma, phi) built on
//      |Z+-> = (1/sqrt N) sum_alpha |alpha,+-> :
//        chi = cos(gamma/2)|Z+> + e^{i phi} sin(gamma/2)|Z->.
//   2/3. Non-separable families I and II: defined directly in the momentum
//      eigenbasis at every k with k-independent coefficients; family I splits
//      branches low/high (s <= N vs s > N), family II splits even/odd.
//
// The momentum profile of a lattice Gaussian is its periodized image sum
// (Poisson summation): sum_x e^{-ik.x} e^{-x^2/(2 s^2)} =
// sqrt(2 pi) s * sum_m e^{-s^2 (k + 2 pi m)^2 / 2} per axis. The position
// exponent convention is e^{-x.x/(2 sigma^2)} throughout.
// =============================================================================
#pragma once

#include <optional>
#include <vector>

#include "qwalk/coin_spectral.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

struct BlochPoint {
  double gamma = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2pi)
  BlochPoint(double gamma_in, double phi_in);
};

struct SeparableGaussianIC {
  double sigma;       // > 0
  MomentumVector k0;  // every component strictly inside (-pi, pi)
  BlochPoint bloch;
  SeparableGaussianIC(double sigma_in, MomentumVector k0_in, BlochPoint bloch_in);
};

enum class NonSeparableFamily { I, II };

struct NonSeparableIC {
  NonSeparableFamily family;
  BlochPoint bloch;
};

// chi(gamma, phi) as a 2N-component unit vector.
Vec chi_vector(int dim_n, const BlochPoint& bloch);

// Lattice state xi_x (x) chi with xi_x ~ e^{i k0.x} e^{-x.x/(2 sigma^2)},
// truncated at the window radius and explicitly renormalized. The window
// must be at least 8 sigma (truncated mass < 1e-27); smaller windows throw
// invalid_input_error.
WalkerState gaussian_position_amplitudes(const SeparableGaussianIC& ic,
                                         long window_radius);

// Periodized momentum profile: product over axes of
// sum_m e^{-sigma^2 (k_a - k0_a + 2 pi m)^2 / 2}, image terms below 1e-30
// dropped. Real-positive; periodic in every component by construction.
Cx gaussian_momentum_profile(double sigma, const MomentumVector& k0,
                             const MomentumVector& k);

// sigma -> infinity limit: the packet collapses onto k0 and the asymptotic
// weights become Lambda_s = |<phi_{k0}^(s)|chi>|^2 with the eigenvectors at
// k0 as the asymptotic basis. If k0 sits on a degeneracy the limit needs a
// direction: for the 2D p=1/2 Grover walk at the diabolical point supply
// theta and the theta-limit vectors are used; otherwise degeneracy_error.
struct DeltaLimit {
  std::vector<double> lambdas;  // index-aligned with the bundle branch order
  Mat vectors;                  // columns: the asymptotic eigenbasis at k0
};
DeltaLimit delta_limit_lambdas(const CoinMatrix& coin, const MomentumVector& k0,
                               const BlochPoint& bloch,
                               std::optional<double> theta = std::nullopt);

// The family state at one k, built in the (ordered) eigenbasis:
//   I : cos(g/2) (1/sqrt N) sum_{s<=N} phi_s + e^{i phi} sin(g/2) (1/sqrt N) sum_{s>N} phi_s
//   II: same with the even-s / odd-s split (s counted from 1).
// The bundle must carry a deliberately ordered basis (the branch-order
// convention is part of the family definition and is recorded in outputs);
// bundles with unresolved degenerate clusters throw invalid_input_error.
Vec nonseparable_momentum_state(NonSeparableFamily family, const BlochPoint& bloch,
                                const SpectralBundle& bundle);

}  // namespace qwalk
