#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "iietlab/sweep.hpp"

using namespace iietlab;
using namespace testutil;

TEST_CASE("parallel batch evaluation is bit-identical to the serial reference") {
  const auto config = config_of(kPeriodDoubling);
  const auto f = power(build_approximant(config, 14), 64);

  const auto xs = sweep::sample_grid(100003);  // odd size exercises tail chunks
  std::vector<double> serial(xs.size()), parallel(xs.size());
  sweep::map_evaluate_serial(f, xs, serial);
  sweep::map_evaluate(f, xs, parallel);
  CHECK(serial == parallel);
}

TEST_CASE("parallel composition is bit-identical to the serial reference") {
  const auto config = config_of(kPeriodDoubling, false);
  const auto f20 = build_approximant(config, 20);
  // Drive the piece count past the parallel threshold and square once more.
  const auto big = power(f20, 1ULL << 7);
  REQUIRE(big.piece_count() >= 1024);

  const auto fast = compose(big, big);
  const auto slow = compose_serial(big, big);
  REQUIRE(fast.piece_count() == slow.piece_count());
  for (std::size_t i = 0; i < fast.piece_count(); ++i) {
    CHECK(fast.pieces()[i].left == slow.pieces()[i].left);
    CHECK(fast.pieces()[i].length == slow.pieces()[i].length);
    CHECK(fast.pieces()[i].translation == slow.pieces()[i].translation);
  }

  // And both implement pointwise nesting up to roundoff in the offsets.
  for (double x : sweep::sample_grid(509))
    CHECK(std::fabs(fast.evaluate(x) - big.evaluate(big.evaluate(x))) < 1e-14);
}

TEST_CASE("sample grid is the midpoint lattice") {
  const auto xs = sweep::sample_grid(4);
  REQUIRE(xs.size() == 4);
  CHECK(close(xs[0], 0.125));
  CHECK(close(xs[3], 0.875));
}
