#include "iietlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace iietlab {

namespace {

int label_id(const SubstitutionRule& rule, const Label& label) {
  return rule.label_offset(label.letter) + label.position - 1;
}

}  // namespace

PhiConfig::PhiConfig(SubstitutionRule rule, PerronData perron, std::vector<int> initial_order,
                     std::vector<std::vector<Label>> dual_order, bool assume_minimal)
    : rule_(std::move(rule)),
      perron_(std::move(perron)),
      initial_order_(std::move(initial_order)),
      dual_(std::move(dual_order)) {
  const int s = rule_.size();

  if (!assume_minimal) {
    const PrimitivityResult prim = primitivity_check(transition_matrix(rule_));
    if (!prim.primitive)
      throw AssumptionError(
          "transition matrix is not primitive; pass assume-minimal to assert minimality");
  }

  std::vector<int> seen(static_cast<std::size_t>(s), 0);
  if (static_cast<int>(initial_order_.size()) != s)
    throw ParseError("initial order must list every letter exactly once");
  for (int a : initial_order_) {
    if (a < 0 || a >= s || seen[static_cast<std::size_t>(a)]++)
      throw ParseError("initial order is not a permutation of the alphabet");
  }
  if (static_cast<int>(dual_.size()) != s)
    throw ParseError("dual order must cover every letter");
  for (int a = 0; a < s; ++a) {
    std::vector<Label> sorted = dual_[static_cast<std::size_t>(a)];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != parent_set(rule_, a))
      throw ParseError(std::string("dual order for `") + rule_.letter(a) +
                       "` is not a permutation of its parent set");
  }

  phi0_.assign(static_cast<std::size_t>(s), 0.0);
  double cum = 0.0;
  for (int a : initial_order_) {
    phi0_[static_cast<std::size_t>(a)] = cum;
    cum += measure(a);
  }
  if (std::fabs(cum - 1.0) >= 1e-12)
    throw NumericError("letter intervals do not cover the unit interval");

  phi_.assign(static_cast<std::size_t>(rule_.label_count()), 0.0);
  for (int a = 0; a < s; ++a) {
    double off = 0.0;
    for (const Label& b : dual_[static_cast<std::size_t>(a)]) {
      phi_[static_cast<std::size_t>(label_id(rule_, b))] = off;
      off += measure(b.letter) / lambda();
    }
    if (std::fabs(off - measure(a)) >= 1e-12)
      throw NumericError("parent intervals do not cover their letter interval");
  }

  identity_ = "init=";
  for (int a : initial_order_) identity_ += rule_.letter(a);
  identity_ += ";dual=";
  for (int a = 0; a < s; ++a) {
    if (a) identity_ += ';';
    identity_ += rule_.letter(a);
    identity_ += ':';
    identity_ += format_address(rule_, dual_[static_cast<std::size_t>(a)]);
  }
}

double PhiConfig::phi(const Label& label) const {
  return phi_[static_cast<std::size_t>(label_id(rule_, label))];
}

PhiConfig default_config(const SubstitutionRule& rule, const PerronData& perron,
                         std::optional<std::vector<int>> initial_order,
                         std::optional<std::vector<std::vector<Label>>> dual_order,
                         bool assume_minimal) {
  std::vector<int> init;
  if (initial_order) {
    init = std::move(*initial_order);
  } else {
    init.resize(static_cast<std::size_t>(rule.size()));
    for (int a = 0; a < rule.size(); ++a) init[static_cast<std::size_t>(a)] = a;
  }
  std::vector<std::vector<Label>> dual;
  if (dual_order) {
    dual = std::move(*dual_order);
  } else {
    dual.reserve(static_cast<std::size_t>(rule.size()));
    for (int a = 0; a < rule.size(); ++a) dual.push_back(parent_set(rule, a));
  }
  return PhiConfig(rule, perron, std::move(init), std::move(dual), assume_minimal);
}

double phi_n(const PhiConfig& config, const Address& digits) {
  const SubstitutionRule& rule = config.rule();
  if (!validate_address(rule, digits)) throw std::invalid_argument("invalid address");
  const Label& first = digits.front();
  double value = config.phi0(rule.image_letter(first.letter, first.position));
  double scale = 1.0;
  for (const Label& d : digits) {
    value += config.phi(d) * scale;
    scale /= config.lambda();
  }
  return value;
}

AddressedInterval interval_of(const PhiConfig& config, const Address& digits) {
  AddressedInterval out;
  out.left = phi_n(config, digits);
  out.length = config.measure(digits.back().letter) /
               std::pow(config.lambda(), static_cast<int>(digits.size()));
  out.address = digits;
  return out;
}

Address locate(const PhiConfig& config, double x, int depth) {
  if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("locate requires x in [0,1)");
  if (depth < 1) throw std::invalid_argument("locate requires depth >= 1");

  // Level 0: letter intervals in initial order; take the last left <= x.
  int origin = config.initial_order().front();
  double left = 0.0;
  for (int a : config.initial_order()) {
    if (config.phi0(a) <= x) {
      origin = a;
      left = config.phi0(a);
    } else {
      break;
    }
  }

  Address digits;
  digits.reserve(static_cast<std::size_t>(depth));
  double scale = 1.0;
  for (int k = 1; k <= depth; ++k) {
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
  }
  return digits;
}

std::vector<Address> enumerate_addresses(const SubstitutionRule& rule, int level, std::size_t cap) {
  if (level < 1) throw std::invalid_argument("enumerate_addresses requires level >= 1");
  std::vector<std::vector<Label>> parents(static_cast<std::size_t>(rule.size()));
  for (int a = 0; a < rule.size(); ++a) parents[static_cast<std::size_t>(a)] = parent_set(rule, a);

  std::vector<Address> cur;
  for (const Label& d : domain(rule)) cur.push_back({d});
  for (int k = 2; k <= level; ++k) {
    std::vector<Address> next;
    for (const Address& p : cur) {
      for (const Label& b : parents[static_cast<std::size_t>(p.back().letter)]) {
        if (next.size() >= cap)
          throw CapError("address count exceeds the cap of " + std::to_string(cap));
        Address q = p;
        q.push_back(b);
        next.push_back(std::move(q));
      }
    }
    cur.swap(next);
  }
  if (cur.size() > cap) throw CapError("address count exceeds the cap of " + std::to_string(cap));
  return cur;
}

unsigned long long dual_order_count(const SubstitutionRule& rule) {
  unsigned long long count = 1;
  for (int a = 0; a < rule.size(); ++a) {
    const std::size_t t = parent_set(rule, a).size();
    for (std::size_t i = 2; i <= t; ++i) {
      if (count > std::numeric_limits<unsigned long long>::max() / i)
        throw CapError("dual order count overflows");
      count *= i;
    }
  }
  return count;
}

DualOrderIterator::DualOrderIterator(const SubstitutionRule& rule) {
  base_.reserve(static_cast<std::size_t>(rule.size()));
  for (int a = 0; a < rule.size(); ++a) base_.push_back(parent_set(rule, a));
  current_ = base_;
}

bool DualOrderIterator::advance() {
  for (std::size_t a = current_.size(); a-- > 0;) {
    if (std::next_permutation(current_[a].begin(), current_[a].end())) return true;
    // Wrapped back to sorted order; carry into the previous letter.
  }
  return false;
}

std::optional<SelfSimilarConfig> self_similar_config(const SubstitutionRule& rule,
                                                     const PerronData& perron,
                                                     bool assume_minimal) {
  const int s = rule.size();
  const int beta = rule.image_letter(0, 1);
  const int gamma = rule.image_letter(0, rule.image_length(0));
  for (int a = 1; a < s; ++a) {
    if (rule.image_letter(a, 1) != beta) return std::nullopt;
    if (rule.image_letter(a, rule.image_length(a)) != gamma) return std::nullopt;
  }
  if (beta == gamma) {
    // A length-1 image would make a label both minimal and maximal, and the
    // two scaled blocks cannot overlap.
    for (int a = 0; a < s; ++a)
      if (rule.image_length(a) < 2) return std::nullopt;
  }

  // Ending letter first, the rest in alphabet order.
  std::vector<int> init{gamma};
  for (int a = 0; a < s; ++a)
    if (a != gamma) init.push_back(a);

  auto is_max = [&rule](const Label& b) { return b.position == rule.image_length(b.letter); };
  auto is_min = [](const Label& b) { return b.position == 1; };

  std::vector<std::vector<Label>> dual(static_cast<std::size_t>(s));
  for (int a = 0; a < s; ++a) {
    const std::vector<Label> canonical = parent_set(rule, a);
    std::vector<Label>& order = dual[static_cast<std::size_t>(a)];
    if (a == gamma) {
      // Maximal labels first, as a scaled copy of the initial order.
      for (int d : init) order.push_back({d, rule.image_length(d)});
      for (const Label& b : canonical)
        if (!is_max(b) && !(a == beta && is_min(b))) order.push_back(b);
      if (a == beta)
        for (int d : init) order.push_back({d, 1});
    } else if (a == beta) {
      // Minimal labels last, as a scaled copy of the initial order.
      for (const Label& b : canonical)
        if (!is_min(b)) order.push_back(b);
      for (int d : init) order.push_back({d, 1});
    } else {
      order = canonical;
    }
  }

  PhiConfig config(rule, perron, std::move(init), std::move(dual), assume_minimal);
  const double kappa =
      config.phi0(beta) + config.measure(beta) - 1.0 / config.lambda();
  return SelfSimilarConfig{std::move(config), kappa};
}

}  // namespace iietlab
