#include "iietlab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>

#include "iietlab/sweep.hpp"

namespace iietlab {

SpectralEstimate spectral_coefficient(const PhiConfig& config, int level, unsigned long long j,
                                      bool centered, std::size_t max_pieces) {
  const FiniteIET composed = power(build_approximant(config, level), j, max_pieces);

  // On each piece the integrand is quadratic; sum the antiderivative.
  double value = 0.0;
  for (const IetPiece& p : composed.pieces()) {
    const double c = p.translation;
    const double a = centered ? p.left - 0.5 : p.left;
    const double b = centered ? p.right() - 0.5 : p.right();
    value += (b * b * b - a * a * a) / 3.0 + c * (b * b - a * a) / 2.0;
  }

  SpectralEstimate out;
  out.j = j;
  out.value = value;
  out.level = level;
  out.error_bound = 2.0 * static_cast<double>(j) / std::pow(config.lambda(), level);
  return out;
}

std::optional<CoincidenceWitness> coincidence_check(const SubstitutionRule& rule) {
  int k = 0;
  if (!rule.constant_length(&k))
    throw AssumptionError("coincidence is defined for constant-length rules only");
  const int s = rule.size();
  if (s > 63) throw CapError("alphabet too large for the subset search");

  const std::uint64_t full = (s == 63) ? ~0ULL : ((1ULL << s) - 1ULL);

  struct Node {
    std::uint64_t mask;
    int parent;    // index into the arena, -1 at the root
    int position;  // 1-based image position taken from the parent
    int depth;
  };
  std::vector<Node> arena{{full, -1, 0, 0}};
  std::unordered_map<std::uint64_t, int> seen{{full, 0}};
  std::deque<int> queue{0};

  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int j = 1; j <= k; ++j) {
      std::uint64_t next = 0;
      for (int a = 0; a < s; ++a)
        if (arena[static_cast<std::size_t>(cur)].mask & (1ULL << a))
          next |= 1ULL << rule.image_letter(a, j);
      if (seen.contains(next)) continue;
      const int id = static_cast<int>(arena.size());
      arena.push_back({next, cur, j, arena[static_cast<std::size_t>(cur)].depth + 1});
      seen.emplace(next, id);
      if ((next & (next - 1)) == 0) {
        // Singleton: rebuild the position word root-to-leaf and flatten it.
        CoincidenceWitness w;
        w.power = arena.back().depth;
        w.letter = static_cast<int>(std::countr_zero(next));
        std::vector<int> positions;
        for (int node = id; node > 0; node = arena[static_cast<std::size_t>(node)].parent)
          positions.push_back(arena[static_cast<std::size_t>(node)].position);
        std::reverse(positions.begin(), positions.end());
        unsigned long long flat = 0;
        for (int pos : positions) {
          if (flat > (std::numeric_limits<unsigned long long>::max() - static_cast<unsigned long long>(pos)) /
                         static_cast<unsigned long long>(k))
            throw CapError("coincidence position overflows");
          flat = flat * static_cast<unsigned long long>(k) + static_cast<unsigned long long>(pos - 1);
        }
        w.position = flat + 1;
        return w;
      }
      queue.push_back(id);
    }
  }
  return std::nullopt;
}

namespace {

// Smallest approximant level whose propagated error bound for the power j is
// below 1e-3.
int level_for_power(double lambda, unsigned long long j) {
  int level = 1;
  double lam_pow = lambda;
  while (2.0 * static_cast<double>(j) / lam_pow >= 1e-3) {
    lam_pow *= lambda;
    ++level;
    if (level > 4096) throw NumericError("approximant level runaway; lambda too close to 1");
  }
  return level;
}

int clusters_at_radius(std::vector<double> values, double radius) {
  std::sort(values.begin(), values.end());
  int clusters = values.empty() ? 0 : 1;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] > radius) ++clusters;
  return clusters;
}

}  // namespace

DiagnosticTable convergence_diagnostic(const PhiConfig& config, int samples, int exp_lo,
                                       int exp_hi, std::size_t max_pieces) {
  if (samples < 1 || exp_lo < 0 || exp_hi < exp_lo)
    throw std::invalid_argument("bad diagnostic parameters");
  const SubstitutionRule& rule = config.rule();

  int k = 0;
  const bool constant = rule.constant_length(&k);

  DiagnosticTable table;
  table.xs = sweep::sample_grid(static_cast<std::size_t>(samples));
  std::vector<std::vector<double>> values_per_x(table.xs.size());

  std::vector<double> out(table.xs.size());
  for (int e = exp_lo; e <= exp_hi; ++e) {
    unsigned long long j;
    if (constant) {
      j = 1;
      for (int i = 0; i < e; ++i) {
        if (j > std::numeric_limits<unsigned long long>::max() / static_cast<unsigned long long>(k))
          throw CapError("power schedule overflows");
        j *= static_cast<unsigned long long>(k);
      }
    } else {
      j = supertile_length(rule, 0, e);
    }

    const int level = level_for_power(config.lambda(), j);
    const FiniteIET composed = power(build_approximant(config, level), j, max_pieces);
    sweep::map_evaluate(composed, table.xs, out);

    table.exponents.push_back(e);
    table.powers.push_back(j);
    table.levels.push_back(level);
    std::vector<double> distances(table.xs.size());
    for (std::size_t i = 0; i < table.xs.size(); ++i) {
      const double d = std::fabs(out[i] - table.xs[i]);
      distances[i] = d;
      values_per_x[i].push_back(out[i]);
      table.rows.push_back({table.xs[i], e, j, out[i], d});
    }
    std::sort(distances.begin(), distances.end());
    const std::size_t m = distances.size();
    table.median_distance.push_back(m % 2 ? distances[m / 2]
                                          : (distances[m / 2 - 1] + distances[m / 2]) / 2.0);
  }

  table.cluster_counts.reserve(values_per_x.size());
  for (const std::vector<double>& values : values_per_x)
    table.cluster_counts.push_back(clusters_at_radius(values, 0.02));
  return table;
}

SelfSimilarityReport self_similarity_check(const PhiConfig& config, double kappa, int level,
                                           int grid, double tol) {
  const FiniteIET f = build_approximant(config, level);
  const double lambda = config.lambda();

  std::vector<double> breakpoints;
  breakpoints.reserve(f.piece_count() + 1);
  for (const IetPiece& p : f.pieces()) breakpoints.push_back(p.left);
  breakpoints.push_back(1.0);

  auto near_breakpoint = [&breakpoints](double x) {
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
    if (it != breakpoints.end() && std::fabs(*it - x) < 1e-6) return true;
    if (it != breakpoints.begin() && std::fabs(*(it - 1) - x) < 1e-6) return true;
    return false;
  };

  std::vector<double> xs, xls;
  xs.reserve(static_cast<std::size_t>(grid));
  const double lo = 1.0 / lambda;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * (1.0 - lo) / static_cast<double>(grid);
    if (near_breakpoint(x) || near_breakpoint(x / lambda)) continue;
    xs.push_back(x);
    xls.push_back(x / lambda);
  }

  std::vector<double> fx(xs.size()), fxl(xs.size());
  sweep::map_evaluate(f, xs, fx);
  sweep::map_evaluate(f, xls, fxl);

  SelfSimilarityReport report;
  report.kappa = kappa;
  report.level = level;
  report.grid = grid;
  report.points_used = static_cast<int>(xs.size());
  report.tol = tol;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    report.max_dev_plus = std::max(report.max_dev_plus, std::fabs(fx[i] - lambda * (fxl[i] + kappa)));
    report.max_dev_minus = std::max(report.max_dev_minus, std::fabs(fx[i] - lambda * (fxl[i] - kappa)));
  }
  report.plus_passes = report.max_dev_plus <= tol;
  report.minus_passes = report.max_dev_minus <= tol;
  return report;
}

}  // namespace iietlab
