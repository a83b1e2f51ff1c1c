// =============================================================================
// bench_kernels.cpp
// Times the two hot kernels (lattice stepping + BZ quadrature) at one worker
// versus all available workers, and checks that the parallel results are
// bitwise identical to the serial ones — the property the reproducible-CSV
// contract stands on.
// =============================================================================
#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qwalk/asymptotics.hpp"
#include "qwalk/grover2d.hpp"
#include "qwalk/initial_conditions.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/parallel.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool bitwise_equal(const qwalk::Mat& a, const qwalk::Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(),
                     sizeof(qwalk::Cx) * static_cast<size_t>(a.size())) == 0;
}

void set_workers(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace

int main() {
  using namespace qwalk;
  const int max_workers = worker_count();
  std::printf("workers available: %d\n\n", max_workers);

  const CoinMatrix coin = grover_coin(GroverParams(0.5));

  // --- lattice stepping + reduced density -----------------------------------
  const SeparableGaussianIC ic(6.0, MomentumVector{0.0, 0.0}, BlochPoint(0.0, 0.0));
  const long steps = 120;
  Mat rho_serial, rho_parallel;
  double t_serial = 0.0, t_parallel = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const bool parallel = pass == 1;
    set_workers(parallel ? max_workers : 1);
    WalkerState state = gaussian_position_amplitudes(ic, 48);
    const auto start = std::chrono::steady_clock::now();
    Mat mean = Mat::Zero(4, 4);
    for (long t = 1; t <= steps; ++t) {
      state = step(state, coin);
      state.prune();
      mean += reduced_density(state);
    }
    mean /= static_cast<double>(steps);
    (parallel ? t_parallel : t_serial) = seconds_since(start);
    (parallel ? rho_parallel : rho_serial) = mean;
  }
  std::printf("lattice %ld steps + reduced density:\n", steps);
  std::printf("  1 worker : %8.3f s\n", t_serial);
  std::printf("  %d workers: %8.3f s   speedup %.2fx   bitwise %s\n\n", max_workers,
              t_parallel, t_serial / t_parallel,
              bitwise_equal(rho_serial, rho_parallel) ? "identical" : "DIFFERENT");

  // --- Brillouin-zone quadrature ---------------------------------------------
  const QuadratureGrid grid(2, 256);
  const AsymptoticIC family1 =
      AsymptoticIC::nonseparable(NonSeparableFamily::I, BlochPoint(kPi / 3.0, 0.0));
  Mat q_serial, q_parallel;
  for (int pass = 0; pass < 2; ++pass) {
    const bool parallel = pass == 1;
    set_workers(parallel ? max_workers : 1);
    const auto start = std::chrono::steady_clock::now();
    const Mat rho = asymptotic_density(family1, coin, grid);
    (parallel ? t_parallel : t_serial) = seconds_since(start);
    (parallel ? q_parallel : q_serial) = rho;
  }
  std::printf("quadrature density, M = %d:\n", grid.points_per_axis());
  std::printf("  1 worker : %8.3f s\n", t_serial);
  std::printf("  %d workers: %8.3f s   speedup %.2fx   bitwise %s\n", max_workers,
              t_parallel, t_serial / t_parallel,
              bitwise_equal(q_serial, q_parallel) ? "identical" : "DIFFERENT");

  const bool ok = bitwise_equal(rho_serial, rho_parallel) &&
                  bitwise_equal(q_serial, q_parallel);
  return ok ? 0 : 1;
}
