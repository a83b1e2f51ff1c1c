// =============================================================================
// grover2d.hpp
// Closed forms for the one-parameter Grover family on the 2D lattice.
//
// The momentum matrix G(k) of the family (chirality order R, L, U, D) is
//
//         [ -p e^{i k1}   q e^{i k1}   r e^{i k1}   r e^{i k1} ]
//  G(k) = [  q e^{-ik1}  -p e^{-ik1}  r e^{-ik1}   r e^{-ik1} ]
//         [  r e^{i k2}   r e^{i k2}  -q e^{i k2}  p e^{i k2}  ]
//         [  r e^{-ik2}   r e^{-ik2}   p e^{-ik2} -q e^{-ik2}  ],
//
// with q = 1-p and r = sqrt(pq). Note the Fourier sign: G(k) equals the
// dynamics matrix momentum_coin(grover_coin(p), -k); observables that
// integrate over the (symmetric) Brillouin zone are identical either way.
//
// For p = 1/2 the eigenvalues are {1, -1, e^{i w}, e^{-i w}} with the
// dispersion cos w = -(cos k1 + cos k2)/2, and the eigenvectors have closed
// forms whose normalization degenerates on cos k1 = cos k2 (removable) and
// at the diabolical points k = 0 mod 2pi, where the three flat branches
// collide at -1 and only direction-dependent limits exist. Both loci are
// routed to the generic eigensolver / the theta-limit vectors.
// =============================================================================
#pragma once

#include <array>
#include <vector>

#include "qwalk/coin_spectral.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

struct GroverParams {
  double p = 0.5;
  explicit GroverParams(double p_in);
  double q() const { return 1.0 - p; }
};

// Polar approach angle at the diabolical point: (k1,k2) = k (cos th, sin th).
struct DiabolicalApproach {
  double theta = 0.0;
  explicit DiabolicalApproach(double theta_in);  // enforces [0, 2pi)
};

// The position-space Grover coin (= G(k) at k = 0); unitary for p in [0,1].
CoinMatrix grover_coin(const GroverParams& params);

// The matrix G(k) above, exactly.
Mat grover_momentum_coin(const GroverParams& params, double k1, double k2);

// Closed-form eigensystem of G(k) for p = 1/2, in the fixed branch order
//   s=1: lambda=1, s=2: lambda=-1, s=3: lambda=e^{iw}, s=4: lambda=e^{-iw},
// i.e. eigenphases (0, pi, -w, +w) under the e^{-i omega} convention.
// Throws branch_singularity_error within 1e-6 of a diabolical point or of
// the removable cos k1 = cos k2 singularity.
SpectralBundle closed_eigensystem(double k1, double k2);

// The four orthonormal limit eigenvectors along approach angle theta at the
// diabolical point (s=1 belongs to lambda=1, s=2..4 to the lambda=-1 triple).
std::array<Vec, 4> diabolical_eigensystem(const DiabolicalApproach& approach);

// Asymptotic weights of the Bloch state chi(gamma, phi) at the diabolical
// point, in the same s order:
//   L1 = (1 + x)/2,  L2 = (1 + sin 2th)(1 - x)/4,  L3 = L4 = (1 - sin 2th)(1 - x)/8
// with x = sin(gamma) cos(phi); they sum to 1.
std::array<double, 4> diabolical_lambdas(double gamma, double phi, double theta);

// Same quadruple directly from the isotherm coordinate x (the weights
// depend on (gamma, phi) only through x).
std::array<double, 4> diabolical_lambdas_from_x(double x, double theta);

// Entanglement temperature T = 2 / ln(Lmax/Lmin) of the quadruple above;
// 0 when Lmin = 0 < Lmax, +inf when the quadruple is uniform.
double diabolical_temperature(double gamma, double phi, double theta);

// The isotherm coordinate x = sin(gamma) cos(phi): T depends on (gamma, phi)
// only through x, so level sets of x are the isothermal lines.
double isotherm_parameter(double gamma, double phi);

struct BlochSample {
  double gamma, phi, x, temperature;
};

// Uniform (gamma, phi) sampling of the sphere at theta = pi: the isotherm
// map with its two cold points (x = +/-1) and the T = 2/ln 2 hot band.
std::vector<BlochSample> bloch_isotherm_map(int res_gamma, int res_phi);

// Eigensystem of the dynamics matrix momentum_coin(grover_coin(1/2), k) in
// the paper branch order, taking the closed forms at -k (see the Fourier
// sign note above) and falling back to the generic eigensolver near the
// closed forms' excluded loci. This is the bundle provider the asymptotic
// machinery uses for the p = 1/2 Grover walk.
SpectralBundle grover_dynamics_bundle(const MomentumVector& k);

// Reorders a generic-eigensolver bundle of a p = 1/2 Grover C_k into the
// fixed branch order by eigenvalue pattern matching. Exposed for tests.
SpectralBundle grover_branch_order(SpectralBundle bundle);

}  // namespace qwalk
