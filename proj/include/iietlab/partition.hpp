#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iietlab/address.hpp"
#include "iietlab/substitution.hpp"

namespace iietlab {

// A fixed refinement scheme for [0,1): left endpoints for the letter
// intervals plus, for each letter, an ordering of its parent set. Together
// these determine the per-label offset table and with it the left endpoint of
// every addressed interval. Immutable after construction.
class PhiConfig {
public:
  // `initial_order` is the letter order used for the level-0 intervals,
  // `dual_order` the per-letter ordering of the parent sets. Validates both
  // are permutations and that the induced intervals tile; rejects
  // non-primitive matrices unless minimality is asserted explicitly.
  PhiConfig(SubstitutionRule rule, PerronData perron,
            std::vector<int> initial_order,
            std::vector<std::vector<Label>> dual_order,
            bool assume_minimal = false);

  const SubstitutionRule& rule() const { return rule_; }
  const PerronData& perron() const { return perron_; }
  double lambda() const { return perron_.lambda; }
  double measure(int letter) const { return perron_.frequencies[static_cast<std::size_t>(letter)]; }

  double phi0(int letter) const { return phi0_[static_cast<std::size_t>(letter)]; }
  double phi(const Label& label) const;
  const std::vector<Label>& dual(int letter) const { return dual_[static_cast<std::size_t>(letter)]; }
  const std::vector<int>& initial_order() const { return initial_order_; }

  // Compact deterministic description of the choices, used as IET metadata.
  const std::string& identity() const { return identity_; }

private:
  SubstitutionRule rule_;
  PerronData perron_;
  std::vector<int> initial_order_;
  std::vector<std::vector<Label>> dual_;
  std::vector<double> phi0_;  // by letter
  std::vector<double> phi_;   // by label id
  std::string identity_;
};

// Alphabet-order initial intervals and canonical parent-set orderings unless
// overridden.
PhiConfig default_config(const SubstitutionRule& rule, const PerronData& perron,
                         std::optional<std::vector<int>> initial_order = std::nullopt,
                         std::optional<std::vector<std::vector<Label>>> dual_order = std::nullopt,
                         bool assume_minimal = false);

struct AddressedInterval {
  double left = 0.0;
  double length = 0.0;
  Address address;
};

// Left endpoint of the addressed interval: the level-0 endpoint of the origin
// letter plus the per-digit offsets scaled down one level at a time.
double phi_n(const PhiConfig& config, const Address& digits);

AddressedInterval interval_of(const PhiConfig& config, const Address& digits);

// Depth-n address of the half-open partition interval containing x. Total on
// [0,1): a point equal to a left endpoint belongs to the interval it starts.
Address locate(const PhiConfig& config, double x, int depth);

// All valid addresses of the given length, first digit in domain order, later
// digits in canonical parent-set order.
std::vector<Address> enumerate_addresses(const SubstitutionRule& rule, int level,
                                         std::size_t cap = kMaxAddresses);

// Number of parent-set orderings: the product of |parent set|! over letters.
unsigned long long dual_order_count(const SubstitutionRule& rule);

// Deterministic odometer over all dual-order assignments, starting from the
// canonical one; the last letter's permutation advances fastest.
class DualOrderIterator {
public:
  explicit DualOrderIterator(const SubstitutionRule& rule);

  const std::vector<std::vector<Label>>& current() const { return current_; }
  bool advance();
  void reset() { current_ = base_; }

private:
  std::vector<std::vector<Label>> base_;
  std::vector<std::vector<Label>> current_;
};

struct SelfSimilarConfig {
  PhiConfig config;
  double kappa = 0.0;
};

// When every image starts with a common letter and ends with a common letter,
// builds the configuration whose exchange map repeats itself under scaling by
// lambda: the ending letter's interval starts at 0 with the maximal labels
// laid out first as a 1/lambda copy of the initial order, and the minimal
// labels form a trailing 1/lambda copy inside the starting letter's interval,
// at absolute offset kappa. Returns nullopt when the hypothesis fails.
std::optional<SelfSimilarConfig> self_similar_config(const SubstitutionRule& rule,
                                                     const PerronData& perron,
                                                     bool assume_minimal = false);

}  // namespace iietlab
