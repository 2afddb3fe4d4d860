#include "iietlab/iet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace iietlab {

namespace {

constexpr double kSliverLength = 1e-14;
constexpr double kSliverBudget = 1e-10;

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

FiniteIET::FiniteIET(std::vector<IetPiece> pieces, int level, std::string config_id,
                     std::vector<std::string> piece_addresses, double tiling_tol)
    : pieces_(std::move(pieces)),
      piece_addresses_(std::move(piece_addresses)),
      level_(level),
      config_id_(std::move(config_id)) {
  if (pieces_.empty()) throw std::invalid_argument("an exchange needs at least one piece");
  if (!piece_addresses_.empty() && piece_addresses_.size() != pieces_.size())
    throw std::invalid_argument("piece addresses must align with pieces");

  if (!std::is_sorted(pieces_.begin(), pieces_.end(),
                      [](const IetPiece& a, const IetPiece& b) { return a.left < b.left; })) {
    std::vector<std::size_t> order(pieces_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
      return pieces_[a].left < pieces_[b].left;
    });
    std::vector<IetPiece> sorted_pieces(pieces_.size());
    std::vector<std::string> sorted_addresses(piece_addresses_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      sorted_pieces[i] = pieces_[order[i]];
      if (!piece_addresses_.empty()) sorted_addresses[i] = std::move(piece_addresses_[order[i]]);
    }
    pieces_ = std::move(sorted_pieces);
    piece_addresses_ = std::move(sorted_addresses);
  }
  validate_exchange(tiling_tol);
}

FiniteIET FiniteIET::identity() { return FiniteIET({{0.0, 1.0, 0.0}}, 0, "identity"); }

std::size_t FiniteIET::piece_index(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const IetPiece& p) { return v < p.left; });
  if (it == pieces_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

void FiniteIET::validate_exchange(double tol) const {
  auto check_tiling = [&](const std::vector<double>& lefts, const std::vector<double>& lengths,
                          const char* what) {
    double total = 0.0;
    for (std::size_t i = 0; i < lefts.size(); ++i) {
      if (!(lengths[i] > 0.0)) throw NumericError(std::string(what) + ": nonpositive piece length");
      if (i == 0) {
        if (std::fabs(lefts[0]) > tol)
          throw NumericError(std::string(what) + ": tiling does not start at 0");
      } else if (std::fabs(lefts[i] - (lefts[i - 1] + lengths[i - 1])) > tol) {
        throw NumericError(std::string(what) + ": gap or overlap between pieces");
      }
      total += lengths[i];
    }
    if (std::fabs(total - 1.0) > tol)
      throw NumericError(std::string(what) + ": piece lengths do not sum to 1");
  };

  std::vector<double> lefts(pieces_.size()), lengths(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    lefts[i] = pieces_[i].left;
    lengths[i] = pieces_[i].length;
  }
  check_tiling(lefts, lengths, "domain");

  std::vector<std::size_t> order(pieces_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return pieces_[a].left + pieces_[a].translation < pieces_[b].left + pieces_[b].translation;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    lefts[i] = pieces_[order[i]].left + pieces_[order[i]].translation;
    lengths[i] = pieces_[order[i]].length;
  }
  check_tiling(lefts, lengths, "image");
}

FiniteIET build_approximant(const PhiConfig& config, int level) {
  if (level < 1) throw std::invalid_argument("approximant level must be >= 1");
  const SubstitutionRule& rule = config.rule();

  std::vector<IetPiece> pieces;
  std::vector<std::string> addresses;
  // One piece per level k and nonfinal slot (alpha, j): the maximal (k-1)-
  // address of the slot's letter extended by the slot itself. Everything in
  // its interval shares the same successor offset.
  for (int k = 1; k <= level; ++k) {
    for (int a = 0; a < rule.size(); ++a) {
      for (int j = 1; j < rule.image_length(a); ++j) {
        Address p;
        if (k > 1) p = extremal_address(rule, k - 1, rule.image_letter(a, j), Extremal::Max);
        p.push_back({a, j});
        const AddressedInterval cell = interval_of(config, p);
        const double image_left = phi_n(config, vershik(rule, p));
        pieces.push_back({cell.left, cell.length, image_left - cell.left});
        addresses.push_back(format_address(rule, p));
      }
    }
  }
  // The leftover maximal cells are sent to the minimal cell of the same type.
  for (int a = 0; a < rule.size(); ++a) {
    const Address p = extremal_address(rule, level, a, Extremal::Max);
    const AddressedInterval cell = interval_of(config, p);
    const double image_left = phi_n(config, extremal_address(rule, level, a, Extremal::Min));
    pieces.push_back({cell.left, cell.length, image_left - cell.left});
    addresses.push_back(format_address(rule, p));
  }
  return FiniteIET(std::move(pieces), level, config.identity(), std::move(addresses));
}

double evaluate_exact(const PhiConfig& config, double x, int max_depth, int* located_level) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("evaluate_exact requires x in [0,1)");
  const SubstitutionRule& rule = config.rule();

  int origin = config.initial_order().front();
  for (int a : config.initial_order()) {
    if (config.phi0(a) <= x)
      origin = a;
    else
      break;
  }

  Address digits;
  double left = config.phi0(origin);
  double scale = 1.0;
  for (int k = 1; k <= max_depth; ++k) {
    const int type = (k == 1) ? origin : digits.back().letter;
    const std::vector<Label>& children = config.dual(type);
    Label pick = children.front();
    double pick_left = left + config.phi(pick) * scale;
    for (const Label& b : children) {
      const double child_left = left + config.phi(b) * scale;
      if (child_left <= x) {
        pick = b;
        pick_left = child_left;
      } else {
        break;
      }
    }
    digits.push_back(pick);
    left = pick_left;
    scale /= config.lambda();
    if (pick.position < rule.image_length(pick.letter)) {
      if (located_level) *located_level = k;
      const double image_left = phi_n(config, vershik(rule, digits));
      return x + (image_left - left);
    }
  }
  throw CapError("point sits in a maximal address chain deeper than " + std::to_string(max_depth));
}

namespace {

// Subpieces of one f-piece: its domain cut at the f-preimages of g's
// breakpoints, each part translated by the sum of the two offsets. Emits into
// `out + base`; with `out == nullptr` only counts.
std::size_t split_piece(const IetPiece& fp, const FiniteIET& g, IetPiece* out) {
  const std::vector<IetPiece>& gp = g.pieces();
  const double y0 = fp.left + fp.translation;
  const double y1 = y0 + fp.length;

  std::size_t i = g.piece_index(y0);
  std::size_t count = 0;
  for (; i < gp.size() && gp[i].left < y1; ++i) {
    const double lo = std::max(y0, gp[i].left);
    const double hi = std::min(y1, gp[i].left + gp[i].length);
    if (hi > lo) {
      if (out) out[count] = {lo - fp.translation, hi - lo, fp.translation + gp[i].translation};
      ++count;
    }
  }
  // Float spill past the last g piece: fold it into that piece's range.
  if (count == 0) {
    const std::size_t last = gp.size() - 1;
    if (out) out[0] = {fp.left, fp.length, fp.translation + gp[last].translation};
    count = 1;
  }
  return count;
}

FiniteIET finalize_composition(std::vector<IetPiece> raw, int level, std::string config_id,
                               std::size_t max_pieces) {
  // Drop float slivers, auditing the total so nothing real disappears.
  std::vector<IetPiece> kept;
  kept.reserve(raw.size());
  double dropped = 0.0;
  for (const IetPiece& p : raw) {
    if (p.length < kSliverLength) {
      dropped += p.length;
      continue;
    }
    kept.push_back(p);
  }
  if (dropped > kSliverBudget)
    throw NumericError("composition dropped measure above budget: " + format_real(dropped));
  if (kept.size() > max_pieces)
    throw CapError("composition has " + std::to_string(kept.size()) + " pieces, above the cap of " +
                   std::to_string(max_pieces));
  return FiniteIET(std::move(kept), level, std::move(config_id));
}

}  // namespace

namespace {

FiniteIET compose_impl(const FiniteIET& f, const FiniteIET& g, std::size_t max_pieces,
                       bool parallel) {
  const std::vector<IetPiece>& fp = f.pieces();
  std::vector<std::size_t> offsets(fp.size() + 1, 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(fp.size()); ++i)
    offsets[static_cast<std::size_t>(i) + 1] = split_piece(fp[static_cast<std::size_t>(i)], g, nullptr);
  for (std::size_t i = 0; i < fp.size(); ++i) offsets[i + 1] += offsets[i];

  if (offsets.back() > 4 * max_pieces)
    throw CapError("composition piece count exploded past the cap");
  std::vector<IetPiece> raw(offsets.back());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(fp.size()); ++i)
    split_piece(fp[static_cast<std::size_t>(i)], g, raw.data() + offsets[static_cast<std::size_t>(i)]);

  const int level = f.level() == g.level() ? f.level() : std::max(f.level(), g.level());
  std::string id = f.config_id() == g.config_id() ? f.config_id()
                                                  : f.config_id() + "|" + g.config_id();
  return finalize_composition(std::move(raw), level, std::move(id), max_pieces);
}

}  // namespace

FiniteIET compose_serial(const FiniteIET& f, const FiniteIET& g, std::size_t max_pieces) {
  return compose_impl(f, g, max_pieces, false);
}

FiniteIET compose(const FiniteIET& f, const FiniteIET& g, std::size_t max_pieces) {
  return compose_impl(f, g, max_pieces, f.piece_count() >= 1024);
}

FiniteIET power(const FiniteIET& f, unsigned long long exponent, std::size_t max_pieces) {
  if (exponent == 0) return FiniteIET::identity();
  // Repeated squaring; breakpoints stay exact piece endpoints throughout.
  std::optional<FiniteIET> result;
  FiniteIET base = f;
  unsigned long long e = exponent;
  while (true) {
    if (e & 1ULL) result = result ? compose(*result, base, max_pieces) : base;
    e >>= 1ULL;
    if (e == 0) break;
    base = compose(base, base, max_pieces);
  }
  return std::move(*result);
}

FiniteIET merge_adjacent(const FiniteIET& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("merge tolerance must be nonnegative");
  std::vector<IetPiece> merged;
  merged.reserve(f.piece_count());
  for (const IetPiece& p : f.pieces()) {
    if (!merged.empty() && std::fabs(merged.back().translation - p.translation) <= tol &&
        std::fabs(merged.back().right() - p.left) <= 1e-9) {
      merged.back().length = p.left + p.length - merged.back().left;
    } else {
      merged.push_back(p);
    }
  }
  return FiniteIET(std::move(merged), f.level(), f.config_id(), {},
                   std::max(1e-10, tol + 1e-10));
}

double disagreement(const FiniteIET& f, const FiniteIET& g) {
  std::vector<double> cuts;
  cuts.reserve(f.piece_count() + g.piece_count() + 1);
  for (const IetPiece& p : f.pieces()) cuts.push_back(p.left);
  for (const IetPiece& p : g.pieces()) cuts.push_back(p.left);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());

  double measure = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(hi > lo)) continue;
    const double mid = lo + (hi - lo) / 2.0;
    const double tf = f.pieces()[f.piece_index(mid)].translation;
    const double tg = g.pieces()[g.piece_index(mid)].translation;
    if (std::fabs(tf - tg) > 1e-12) measure += hi - lo;
  }
  return measure;
}

void write_iet_csv(std::ostream& out, const FiniteIET& f) {
  out << "left,length,translation,level,address\n";
  const std::vector<std::string>& addresses = f.piece_addresses();
  for (std::size_t i = 0; i < f.piece_count(); ++i) {
    const IetPiece& p = f.pieces()[i];
    out << format_real(p.left) << ',' << format_real(p.length) << ','
        << format_real(p.translation) << ',' << f.level() << ','
        << (addresses.empty() ? "" : addresses[i]) << '\n';
  }
}

DualSearchResult search_minimal_exchange(const SubstitutionRule& rule, const PerronData& perron,
                                         int level, double merge_tol, bool assume_minimal,
                                         unsigned long long max_configs, std::size_t max_pieces) {
  unsigned long long initial_count = 1;
  for (int i = 2; i <= rule.size(); ++i) initial_count *= static_cast<unsigned long long>(i);
  const unsigned long long total = initial_count * dual_order_count(rule);
  if (total > max_configs)
    throw CapError("configuration count " + std::to_string(total) + " exceeds the cap");
  (void)max_pieces;

  DualSearchResult result;
  result.min_pieces = std::numeric_limits<std::size_t>::max();

  std::vector<int> init(static_cast<std::size_t>(rule.size()));
  std::iota(init.begin(), init.end(), 0);
  do {
    DualOrderIterator duals(rule);
    do {
      PhiConfig config(rule, perron, init, duals.current(), assume_minimal);
      const FiniteIET approx = build_approximant(config, level);
      const FiniteIET merged = merge_adjacent(approx, merge_tol);
      result.entries.push_back({config.identity(), merged.piece_count()});
      if (merged.piece_count() < result.min_pieces) {
        result.min_pieces = merged.piece_count();
        result.best_config_id = config.identity();
      }
    } while (duals.advance());
  } while (std::next_permutation(init.begin(), init.end()));
  return result;
}

}  // namespace iietlab
