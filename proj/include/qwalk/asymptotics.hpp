// =============================================================================
// asymptotics.hpp
// Brillouin-zone quadrature for the reduced chirality density matrix.
//
// The position trace of the evolved state is the BZ integral
//
//   rho_c(t) = int d^N k/(2pi)^N  sum_{s,s'} e^{i(w_s' - w_s)t} f_s f*_s'
//                                  phi_s phi_s'^dag ,
//
// and as t -> infinity stationary phase kills every cross term whose
// eigenphases differ, leaving
//
//   rho_hat = int d^N k/(2pi)^N  sum_clusters (P_c psi~_k)(P_c psi~_k)^dag ,
//
// where P_c projects onto a degenerate eigenphase cluster. Keeping the full
// within-cluster outer product (rather than just diagonal s-terms) is the
// gauge-invariant reading: exactly degenerate phases never dephase, and the
// expression is basis-free inside each cluster while preserving the trace.
//
// The integral is discretized by the midpoint rule, which never places nodes
// on k = 0 or k = +-pi where the closed-form branches degenerate.
// =============================================================================
#pragma once

#include <vector>

#include "qwalk/coin_spectral.hpp"
#include "qwalk/initial_conditions.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// ---------------------------------------------------------------------------
// Midpoint quadrature grid: per axis k_j = -pi + (2pi/M)(j + 1/2) and node
// weight (1/M)^N. M must be a positive multiple of 4.
// ---------------------------------------------------------------------------
class QuadratureGrid {
 public:
  QuadratureGrid(int dim_n, int points_per_axis);

  int dim_n() const { return dim_n_; }
  int points_per_axis() const { return m_; }
  long total_nodes() const;
  double node(int j) const;               // 1D node value
  MomentumVector node_k(long flat) const;  // row-major flat index -> k
  double node_weight() const;              // (1/M)^N

 private:
  int dim_n_;
  int m_;
};

// ---------------------------------------------------------------------------
// LambdaSpectrum: eigenvalues of an asymptotic density matrix, ascending.
// ---------------------------------------------------------------------------
struct LambdaSpectrum {
  std::vector<double> values;  // ascending, sum 1 within 1e-10
  Mat basis;                   // columns; may be empty when not needed
};

// Initial conditions the quadrature supports: the separable Gaussian family
// (spectral weights |profile(k)|^2, renormalized over the grid) and the two
// non-separable families (uniform weight, state built in the eigenbasis).
struct AsymptoticIC {
  enum class Kind { gaussian, nonseparable_1, nonseparable_2 };
  Kind kind;
  BlochPoint bloch;
  double sigma = 0.0;                  // gaussian only
  std::vector<double> k0;              // gaussian only

  static AsymptoticIC gaussian(double sigma, std::vector<double> k0, BlochPoint bloch);
  static AsymptoticIC nonseparable(NonSeparableFamily family, BlochPoint bloch);
};

// Pre-limit density at integer time t (all cross terms kept).
Mat rho_c_at_time(const AsymptoticIC& ic, const CoinMatrix& coin,
                  const QuadratureGrid& grid, long t);

// The t -> infinity limit: cluster-projected quadrature described above.
Mat asymptotic_density(const AsymptoticIC& ic, const CoinMatrix& coin,
                       const QuadratureGrid& grid);

// Ascending eigenvalues of a Hermitian PSD trace-1 matrix. Eigenvalues in
// [-1e-10, 0) are clipped to 0; anything below -1e-10, or a Hermiticity
// defect above 1e-12, throws numerical_failure_error.
LambdaSpectrum lambda_spectrum(const Mat& rho);

// Closed form of the family-I asymptotic density for the 2D p=1/2 Grover
// walk:  (1/4) [[1,a,b,b],[a,1,b,b],[b,b,1,a],[b,b,a,1]] with
// a = (1 - 4/pi) cos(gamma), b = (1 - 2/pi) cos(gamma).
Mat nonseparable_I_closed_density(double gamma);

// The family-I temperature along gamma, both readings side by side: the
// closed printed formula T = 2/|ln[(1 + (4/pi - 1) cos g)/(1 - cos g)]| and
// the oracle value from the quadrature density's spectrum. The two disagree
// away from the fixed points because the printed eigenvalue set does not
// sum to 1 (see nonseparable_I_closed_density's spectrum); both are
// reported so the discrepancy stays measurable.
struct TemperaturePair {
  double printed;
  double oracle;
};
TemperaturePair nonseparable_I_temperature(double gamma, const QuadratureGrid& grid);

// ---------------------------------------------------------------------------
// Node-level helpers shared by the quadrature loops and the sweep commands.
// ---------------------------------------------------------------------------

// Bundle provider: the p=1/2 Grover coin routes to its closed forms in the
// fixed branch order; everything else takes the generic eigensolver
// (eigenphase-ascending order). The returned flag names the convention.
struct BundleProvider {
  const CoinMatrix& coin;
  bool grover_half;  // detected once at construction
  explicit BundleProvider(const CoinMatrix& coin_in);
  SpectralBundle at(const MomentumVector& k) const;
  const char* branch_order_name() const {
    return grover_half ? "grover" : "phase_ascending";
  }
};

// Momentum state of the IC at one node (unit norm) given its bundle.
Vec ic_momentum_state(const AsymptoticIC& ic, const SpectralBundle& bundle);

// Per-node quadrature weights for the IC, normalized to sum to exactly the
// accumulated total 1 (Gaussian profiles are renormalized on the grid).
std::vector<double> ic_node_weights(const AsymptoticIC& ic, const QuadratureGrid& grid);

}  // namespace qwalk
