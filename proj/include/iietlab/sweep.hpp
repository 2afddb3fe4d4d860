#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "iietlab/iet.hpp"

namespace iietlab::sweep {

// Batch evaluation of an exchange over many points. The serial version is the
// reference; the parallel one writes each slot independently and produces
// bit-identical output for any thread count.
void map_evaluate_serial(const FiniteIET& f, std::span<const double> xs, std::span<double> out);
void map_evaluate(const FiniteIET& f, std::span<const double> xs, std::span<double> out);

// Midpoint grid (2i+1)/(2n): deterministic and clear of 0, 1, and the short
// dyadic endpoints.
std::vector<double> sample_grid(std::size_t samples);

}  // namespace iietlab::sweep
