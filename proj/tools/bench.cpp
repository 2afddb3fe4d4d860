// Timing harness for the data-parallel kernels against their serial
// references: batch evaluation over a large grid and the piece splitter used
// by composition. Output verifies agreement before timing.

#include <chrono>
#include <cstdio>
#include <string>

#include "iietlab/iet.hpp"
#include "iietlab/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace iietlab;

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(int repeats, F&& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    body();
    const auto stop = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  const auto rule = SubstitutionRule::parse("A -> AB\nB -> AA\n");
  const auto config = default_config(rule, perron_data(transition_matrix(rule)));
  const FiniteIET base = build_approximant(config, 20);
  const FiniteIET big = power(base, 1ULL << 7);
  std::printf("workload: level-20 approximant to the 128th power, %zu pieces\n\n",
              big.piece_count());

  {
    const auto xs = sweep::sample_grid(4'000'000);
    std::vector<double> out_serial(xs.size()), out_parallel(xs.size());
    const double serial = time_ms(3, [&] { sweep::map_evaluate_serial(big, xs, out_serial); });
    const double parallel = time_ms(3, [&] { sweep::map_evaluate(big, xs, out_parallel); });
    const bool same = out_serial == out_parallel;
    std::printf("map_evaluate, 4e6 points:   serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
                serial, parallel, serial / parallel, same ? "bit-identical" : "MISMATCH");
  }

  {
    FiniteIET out_serial = FiniteIET::identity();
    FiniteIET out_parallel = FiniteIET::identity();
    const double serial = time_ms(3, [&] { out_serial = compose_serial(big, big); });
    const double parallel = time_ms(3, [&] { out_parallel = compose(big, big); });
    const bool same = out_serial.pieces().size() == out_parallel.pieces().size();
    std::printf("compose, %zu x %zu pieces: serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
                big.piece_count(), big.piece_count(), serial, parallel, serial / parallel,
                same ? "piece counts agree" : "MISMATCH");
  }
  return 0;
}
