#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "iietlab/partition.hpp"

namespace iietlab {

struct IetPiece {
  double left = 0.0;
  double length = 0.0;
  double translation = 0.0;

  double right() const { return left + length; }
};

// An exchange of finitely many half-open intervals of [0,1): pieces sorted by
// left endpoint, domain and image both tiling [0,1). Construction verifies the
// exchange property. Immutable.
class FiniteIET {
public:
  FiniteIET(std::vector<IetPiece> pieces, int level, std::string config_id,
            std::vector<std::string> piece_addresses = {}, double tiling_tol = 1e-10);

  static FiniteIET identity();

  const std::vector<IetPiece>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  int level() const { return level_; }
  const std::string& config_id() const { return config_id_; }
  // Generating addresses for freshly built approximants; empty after
  // composition or merging.
  const std::vector<std::string>& piece_addresses() const { return piece_addresses_; }

  double evaluate(double x) const { return x + pieces_[piece_index(x)].translation; }
  std::size_t piece_index(double x) const;

  void validate_exchange(double tol = 1e-10) const;

private:
  std::vector<IetPiece> pieces_;
  std::vector<std::string> piece_addresses_;
  int level_ = 0;
  std::string config_id_;
};

// The level-n finite approximant: one piece per address whose maximal prefix
// ends at level k <= n with a nonfinal position, plus one piece per letter for
// the level-n maximal address, which is sent to the matching minimal address.
// Piece count is n * (labels - letters) + letters.
FiniteIET build_approximant(const PhiConfig& config, int level);

// Evaluates the infinite exchange at x by locating digits until the first
// increasable level N <= max_depth, then translating by the successor offset.
// Agrees with any approximant of level >= N. Throws CapError when x sits in a
// maximal address chain deeper than the budget. `located_level` reports N.
double evaluate_exact(const PhiConfig& config, double x, int max_depth = 64,
                      int* located_level = nullptr);

// h with h(x) = g(f(x)); breakpoints are f's plus preimages of g's under f.
// Slivers below 1e-14 are dropped with an audited total below 1e-10. The
// serial version is the reference; compose() switches to the parallel
// splitter on large inputs and produces bit-identical pieces.
FiniteIET compose_serial(const FiniteIET& f, const FiniteIET& g,
                         std::size_t max_pieces = kMaxPieces);
FiniteIET compose(const FiniteIET& f, const FiniteIET& g, std::size_t max_pieces = kMaxPieces);

// f composed with itself `exponent` times, by repeated squaring.
FiniteIET power(const FiniteIET& f, unsigned long long exponent,
                std::size_t max_pieces = kMaxPieces);

// Merges abutting pieces whose translations agree within tol.
FiniteIET merge_adjacent(const FiniteIET& f, double tol);

// Lebesgue measure of the set where the two exchanges disagree, computed over
// the common refinement; translations compared at 1e-12.
double disagreement(const FiniteIET& f, const FiniteIET& g);

// CSV with header left,length,translation,level,address; reals at 17
// significant digits; the address column is empty for composed tables.
void write_iet_csv(std::ostream& out, const FiniteIET& f);

struct DualSearchEntry {
  std::string config_id;
  std::size_t merged_pieces = 0;
};

struct DualSearchResult {
  std::vector<DualSearchEntry> entries;
  std::size_t min_pieces = 0;
  std::string best_config_id;
};

// Builds the level-n approximant for every initial order and dual order of
// the rule, merges at the given tolerance, and reports the piece counts. Used
// to hunt for configurations whose exchange collapses to few intervals.
DualSearchResult search_minimal_exchange(const SubstitutionRule& rule, const PerronData& perron,
                                         int level, double merge_tol, bool assume_minimal = false,
                                         unsigned long long max_configs = kMaxDualOrders,
                                         std::size_t max_pieces = kMaxPieces);

}  // namespace iietlab
