// =============================================================================
// types.hpp
// Shared domain types and the error taxonomy for the coined-walk toolkit.
//
// Conventions fixed here and used by every module:
//   * Lattice dimension N; the coin space has 2N chirality components.
//   * Flattened chirality index s = 2(alpha-1) + (0 for eta=+1, 1 for eta=-1),
//     i.e. the order (1,+), (1,-), (2,+), (2,-), ...  Component (alpha,eta)
//     moves the walker by eta along axis alpha each step.
//   * Quasi-momentum components live in [-pi, pi].
// =============================================================================
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qwalk {

using Cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Numerical windows deciding the degenerate thermodynamic branches of a
// trace-1 spectrum: Lmax - Lmin below kSpectrumUniformTol reads as uniform
// (T = +inf), Lmin below kSpectrumZeroTol as a zero eigenvalue (T = 0).
// Both sit far above quadrature round-off (~1e-15) and far below any
// physical gap in the studied families.
inline constexpr double kSpectrumUniformTol = 1e-12;
inline constexpr double kSpectrumZeroTol = 1e-12;

// Entanglement temperature of a spectrum from its extreme eigenvalues:
// T = 2 / ln(Lmax/Lmin), with the two degenerate branches above.
inline double spectrum_temperature(double lambda_min, double lambda_max) {
  if (lambda_max - lambda_min <= kSpectrumUniformTol)
    return std::numeric_limits<double>::infinity();
  if (lambda_min <= kSpectrumZeroTol) return 0.0;
  return 2.0 / std::log(lambda_max / lambda_min);
}

// ---------------------------------------------------------------------------
// Error taxonomy. The CLI maps these onto process exit codes:
//   invalid_input -> 2, numerical_failure -> 3, failed validations -> 1.
// ---------------------------------------------------------------------------

// Precondition violations: malformed matrices, out-of-range parameters,
// dimension mismatches, unusable configs.
struct invalid_input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closed-form branch was evaluated inside its excluded neighbourhood
// (diabolical point or the removable normalization singularity); callers
// should fall back to the generic eigensolver or the limit vectors.
struct branch_singularity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation that needs a non-degenerate (or non-uniform) spectrum met a
// degenerate one and no disambiguating parameter was supplied.
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerics went out of tolerance (lost positivity, failed convergence).
struct numerical_failure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CoinMatrix: a 2N x 2N unitary acting on the chirality space.
// ---------------------------------------------------------------------------
class CoinMatrix {
 public:
  // Validates the dimension pairing and unitarity (max-abs residual 1e-12).
  CoinMatrix(int dim_n, Mat entries);

  int dim_n() const { return dim_n_; }
  int size() const { return 2 * dim_n_; }
  const Mat& entries() const { return entries_; }

 private:
  int dim_n_;
  Mat entries_;
};

// ---------------------------------------------------------------------------
// MomentumVector: quasi-momentum k with every component in [-pi, pi].
// ---------------------------------------------------------------------------
class MomentumVector {
 public:
  explicit MomentumVector(RVec components);
  MomentumVector(std::initializer_list<double> components);

  int dim() const { return static_cast<int>(k_.size()); }
  double operator[](int axis) const { return k_[axis]; }
  const RVec& components() const { return k_; }

 private:
  RVec k_;
};

// Max-abs unitarity residual |M^dagger M - I|.
double unitarity_residual(const Mat& m);

}  // namespace qwalk
