#pragma once

#include <optional>
#include <vector>

#include "iietlab/iet.hpp"
#include "iietlab/partition.hpp"

namespace iietlab {

// One correlation coefficient of the coordinate function with its j-th
// shift, evaluated through the level-N approximant. The bound 2*j/lambda^N
// propagates the approximant's disagreement measure with integrand magnitude
// at most 1 on each side.
struct SpectralEstimate {
  unsigned long long j = 0;
  double value = 0.0;
  double error_bound = 0.0;
  int level = 0;
};

// Integrates x * F^j(x) (or the centered variant (x-1/2)(F^j(x)-1/2)) in
// closed form over the pieces of the composed exchange.
SpectralEstimate spectral_coefficient(const PhiConfig& config, int level, unsigned long long j,
                                      bool centered = false, std::size_t max_pieces = kMaxPieces);

// A power N and flat position j_c at which every letter's N-fold image shows
// the same letter.
struct CoincidenceWitness {
  int power = 0;
  unsigned long long position = 0;  // 1-based within [1, K^N]
  int letter = 0;
};

// Breadth-first search on subsets of the alphabet under the per-position
// image maps, starting from the full set; a singleton at depth N yields the
// witness, exhaustion yields nullopt. Requires constant length.
std::optional<CoincidenceWitness> coincidence_check(const SubstitutionRule& rule);

struct DiagnosticRow {
  double x = 0.0;
  int exponent = 0;
  unsigned long long power = 0;
  double value = 0.0;
  double distance = 0.0;
};

struct DiagnosticTable {
  std::vector<double> xs;
  std::vector<int> exponents;
  std::vector<unsigned long long> powers;       // per exponent
  std::vector<int> levels;                      // approximant level per exponent
  std::vector<DiagnosticRow> rows;              // xs-major per exponent block
  std::vector<double> median_distance;          // per exponent
  std::vector<int> cluster_counts;              // per x, radius 0.02 over values
};

// Distances |F^{j_e}(x) - x| over a deterministic sample grid for the power
// schedule K^e (constant length) or |image^e(first letter)| otherwise. The
// approximant level per exponent is the smallest with error bound below 1e-3.
DiagnosticTable convergence_diagnostic(const PhiConfig& config, int samples,
                                       int exp_lo, int exp_hi,
                                       std::size_t max_pieces = kMaxPieces);

struct SelfSimilarityReport {
  double kappa = 0.0;
  int level = 0;
  int grid = 0;
  int points_used = 0;
  double tol = 0.0;
  double max_dev_plus = 0.0;   // F(x) = lambda * (F(x/lambda) + kappa)
  double max_dev_minus = 0.0;  // F(x) = lambda * (F(x/lambda) - kappa)
  bool plus_passes = false;
  bool minus_passes = false;
};

// Tests both signs of the rescaling relation on a grid in [1/lambda, 1),
// excluding 1e-6 neighborhoods of the approximant's breakpoints for both x
// and x/lambda. The passing sign is reported, never assumed.
SelfSimilarityReport self_similarity_check(const PhiConfig& config, double kappa, int level,
                                           int grid, double tol);

}  // namespace iietlab
