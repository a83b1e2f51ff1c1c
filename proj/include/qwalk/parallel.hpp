// =============================================================================
// parallel.hpp
// Deterministic OpenMP helpers.
//
// Every reduction in the toolkit goes through blocked_reduce: the index range
// is cut into fixed-size blocks, each block is accumulated serially in index
// order, and the per-block partials are combined serially in block order.
// The floating-point result is therefore bitwise identical for any worker
// count (including 1), which the CSV determinism contract relies on.
// =============================================================================
#pragma once

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qwalk {

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Accumulator requirements: default-constructible zero state is supplied by
// the caller as `zero` (copied per block); `body(i, acc)` folds index i into
// acc; `join(into, part)` folds one block partial into the running total.
template <class Acc, class Body, class Join>
Acc blocked_reduce(long n, const Acc& zero, Body body, Join join,
                   long block_size = 4096) {
  if (n <= 0) return zero;
  const long nblocks = (n + block_size - 1) / block_size;
  std::vector<Acc> partial(static_cast<size_t>(nblocks), zero);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long b = 0; b < nblocks; ++b) {
    Acc& acc = partial[static_cast<size_t>(b)];
    const long end = std::min(n, (b + 1) * block_size);
    for (long i = b * block_size; i < end; ++i) body(i, acc);
  }
  Acc total = zero;
  for (long b = 0; b < nblocks; ++b) join(total, partial[static_cast<size_t>(b)]);
  return total;
}

}  // namespace qwalk
