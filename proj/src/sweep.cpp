#include "iietlab/sweep.hpp"

#include <stdexcept>

namespace iietlab::sweep {

void map_evaluate_serial(const FiniteIET& f, std::span<const double> xs, std::span<double> out) {
  if (xs.size() != out.size()) throw std::invalid_argument("input/output spans differ in size");
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f.evaluate(xs[i]);
}

void map_evaluate(const FiniteIET& f, std::span<const double> xs, std::span<double> out) {
  if (xs.size() != out.size()) throw std::invalid_argument("input/output spans differ in size");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= 2048)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = f.evaluate(xs[static_cast<std::size_t>(i)]);
}

std::vector<double> sample_grid(std::size_t samples) {
  std::vector<double> xs(samples);
  for (std::size_t i = 0; i < samples; ++i)
    xs[i] = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(samples));
  return xs;
}

}  // namespace iietlab::sweep
