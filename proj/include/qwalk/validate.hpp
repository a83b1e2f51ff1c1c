// =============================================================================
// validate.hpp
// Randomized invariant suites, one per module, shared by cmd_validate and
// the test binaries. Each suite draws its cases from a seeded deterministic
// RNG so failures reproduce exactly.
// =============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;  // first failure, or a one-line summary when passed
};

std::vector<SuiteResult> run_validation_suites(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Deterministic RNG helpers (identical streams on every platform; the
// standard distributions are implementation-defined, so the mapping from
// raw 64-bit draws to doubles is spelled out here).
// ---------------------------------------------------------------------------
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64();
  double uniform(double lo, double hi);  // in [lo, hi)
  double normal();                       // Box-Muller on two uniforms

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Haar-ish random unitary: QR of a complex Gaussian matrix with the R
// diagonal's phases absorbed (deterministic given the Rng state).
Mat random_unitary(Rng& rng, int size);

}  // namespace qwalk
