#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "iietlab/partition.hpp"

using namespace iietlab;
using namespace testutil;

namespace {

const char* kAllRules[] = {testutil::kPeriodDoubling, testutil::kFibonacci, testutil::kThueMorse,
                           testutil::kTribonacci, testutil::kChacon};

PhiConfig any_config(const char* text) {
  return config_of(text, /*assume_minimal=*/true);
}

}  // namespace

TEST_CASE("default offsets for period doubling match the worked example") {
  const auto config = config_of(kPeriodDoubling);
  CHECK(close(config.phi0(0), 0.0));
  CHECK(close(config.phi0(1), 2.0 / 3.0));
  CHECK(close(config.phi({0, 1}), 0.0));        // A1
  CHECK(close(config.phi({1, 1}), 1.0 / 3.0));  // B1
  CHECK(close(config.phi({1, 2}), 1.0 / 2.0));  // B2
  CHECK(close(config.phi({0, 2}), 0.0));        // A2
}

TEST_CASE("one-letter rule degenerates cleanly") {
  const auto rule = rule_of("A -> AA");
  const auto config = default_config(rule, perron_data(transition_matrix(rule)));
  CHECK(close(config.phi0(0), 0.0));
  CHECK(close(config.phi({0, 1}), 0.0));
  CHECK(close(config.phi({0, 2}), 0.5));
}

TEST_CASE("reversed dual order shifts the offsets") {
  const auto rule = rule_of(kPeriodDoubling);
  const auto perron = perron_data(transition_matrix(rule));
  std::vector<std::vector<Label>> dual = {{{1, 1}, {1, 2}, {0, 1}},  // B1 B2 A1
                                          {{0, 2}}};
  const auto config = default_config(rule, perron, std::nullopt, dual);
  CHECK(close(config.phi({1, 1}), 0.0));
  CHECK(close(config.phi({1, 2}), 1.0 / 6.0));
  CHECK(close(config.phi({0, 1}), 1.0 / 3.0));
}

TEST_CASE("bad orders are rejected") {
  const auto rule = rule_of(kPeriodDoubling);
  const auto perron = perron_data(transition_matrix(rule));
  CHECK_THROWS_AS(default_config(rule, perron, std::vector<int>{0, 0}), ParseError);
  std::vector<std::vector<Label>> dual = {{{0, 1}, {1, 1}}, {{0, 2}}};  // missing B2
  CHECK_THROWS_AS(default_config(rule, perron, std::nullopt, dual), ParseError);
}

TEST_CASE("non-primitive rules require the explicit flag") {
  CHECK_THROWS_AS(config_of(kChacon), AssumptionError);
  CHECK_NOTHROW(config_of(kChacon, true));
}

TEST_CASE("left endpoints of addressed intervals") {
  const auto config = config_of(kPeriodDoubling);
  const auto& rule = config.rule();
  CHECK(close(phi_n(config, parse_address(rule, "A2")), 2.0 / 3.0));
  CHECK(close(phi_n(config, parse_address(rule, "B1")), 1.0 / 3.0));
  CHECK(close(phi_n(config, parse_address(rule, "A2.B1")), 5.0 / 6.0));
  CHECK(close(phi_n(config, parse_address(rule, "B2")), 1.0 / 2.0));

  // The closed form matches the recursive refinement.
  for (const Address& p : enumerate_addresses(rule, 5)) {
    const Address parent(p.begin(), p.end() - 1);
    if (parent.empty()) continue;
    const double direct = phi_n(config, p);
    const double recursive =
        phi_n(config, parent) + config.phi(p.back()) / std::pow(config.lambda(), p.size() - 1);
    CHECK(close(direct, recursive));
  }
}

TEST_CASE("addressed intervals") {
  const auto config = config_of(kPeriodDoubling);
  const auto& rule = config.rule();

  const auto top = interval_of(config, parse_address(rule, "A2"));
  CHECK(close(top.left, 2.0 / 3.0));
  CHECK(close(top.length, 1.0 / 3.0));

  const auto nested = interval_of(config, parse_address(rule, "A2.A1"));
  CHECK(close(nested.left, 2.0 / 3.0));
  CHECK(close(nested.length, 1.0 / 6.0));

  const auto leftmost = interval_of(config, parse_address(rule, "A1"));
  CHECK(close(leftmost.left, 0.0));
  CHECK(close(leftmost.length, 1.0 / 3.0));
}

TEST_CASE("locating points in the refinement") {
  const auto config = config_of(kPeriodDoubling);
  const auto& rule = config.rule();
  CHECK(locate(config, 0.7, 2) == parse_address(rule, "A2.A1"));
  CHECK(locate(config, 0.0, 1) == parse_address(rule, "A1"));
  CHECK(locate(config, 11.0 / 12.0, 2) == parse_address(rule, "A2.B2"));

  // locate is a right inverse of the interval map, at every midpoint.
  for (const char* text : kAllRules) {
    const auto cfg = any_config(text);
    for (int n = 1; n <= 5; ++n)
      for (const Address& p : enumerate_addresses(cfg.rule(), n)) {
        const auto cell = interval_of(cfg, p);
        CHECK(locate(cfg, cell.left + cell.length / 2.0, n) == p);
      }
  }
}

TEST_CASE("levels tile the unit interval") {
  for (const char* text : kAllRules) {
    const auto config = any_config(text);
    for (int n = 1; n <= 6; ++n) {
      const auto addresses = enumerate_addresses(config.rule(), n);
      std::vector<AddressedInterval> cells;
      cells.reserve(addresses.size());
      for (const Address& p : addresses) cells.push_back(interval_of(config, p));
      std::sort(cells.begin(), cells.end(),
                [](const AddressedInterval& a, const AddressedInterval& b) { return a.left < b.left; });
      double total = 0.0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        total += cells[i].length;
        if (i) CHECK(std::fabs(cells[i].left - (cells[i - 1].left + cells[i - 1].length)) < 1e-10);
        if (i) CHECK(cells[i].left > cells[i - 1].left);  // distinct addresses, disjoint cells
      }
      CHECK(std::fabs(cells.front().left) < 1e-10);
      CHECK(std::fabs(total - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("child cells nest inside their parents") {
  for (const char* text : kAllRules) {
    const auto config = any_config(text);
    for (int n = 1; n < 5; ++n)
      for (const Address& p : enumerate_addresses(config.rule(), n)) {
        const auto parent = interval_of(config, p);
        for (const Label& b : parent_set(config.rule(), p.back().letter)) {
          Address q = p;
          q.push_back(b);
          const auto child = interval_of(config, q);
          CHECK(child.left >= parent.left - 1e-12);
          CHECK(child.left + child.length <= parent.left + parent.length + 1e-12);
        }
      }
  }
}

TEST_CASE("measures are refinement consistent") {
  for (const char* text : kAllRules) {
    const auto config = any_config(text);
    for (int a = 0; a < config.rule().size(); ++a) {
      double sum = 0.0;
      for (const Label& b : parent_set(config.rule(), a))
        sum += config.measure(b.letter) / config.lambda();
      CHECK(close(sum, config.measure(a)));
    }
  }
}

TEST_CASE("address enumeration counts") {
  CHECK(enumerate_addresses(rule_of(kPeriodDoubling), 1).size() == 4);
  CHECK(enumerate_addresses(rule_of(kPeriodDoubling), 2).size() == 8);
  CHECK(enumerate_addresses(rule_of(kFibonacci), 1).size() == 3);
  CHECK_THROWS_AS(enumerate_addresses(rule_of(kPeriodDoubling), 10, 100), CapError);
}

TEST_CASE("dual order enumeration") {
  CHECK(dual_order_count(rule_of(kFibonacci)) == 2);
  CHECK(dual_order_count(rule_of(kPeriodDoubling)) == 6);
  CHECK(dual_order_count(rule_of("A -> A")) == 1);

  const auto rule = rule_of(kPeriodDoubling);
  DualOrderIterator it(rule);
  std::vector<std::string> seen;
  do {
    std::string key;
    for (int a = 0; a < rule.size(); ++a) key += format_address(rule, it.current()[a]) + "|";
    seen.push_back(key);
  } while (it.advance());
  CHECK(seen.size() == 6);
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());  // all distinct
}

TEST_CASE("self-similar configuration") {
  SUBCASE("applicable when first and last letters are shared") {
    const auto rule = rule_of(kEndsSame);  // images start with B, end with A
    const auto perron = perron_data(transition_matrix(rule));
    const auto ss = self_similar_config(rule, perron);
    REQUIRE(ss.has_value());
    // The ending letter's interval starts at 0 and has measure 1/lambda here.
    CHECK(close(ss->config.phi0(0), 0.0));
    CHECK(ss->kappa >= 1.0 / perron.lambda - 1e-12);
    CHECK(close(ss->kappa, ss->config.phi0(1) + ss->config.measure(1) - 1.0 / perron.lambda));
  }
  SUBCASE("not applicable for period doubling") {
    const auto rule = rule_of(kPeriodDoubling);
    CHECK_FALSE(self_similar_config(rule, perron_data(transition_matrix(rule))).has_value());
  }
  SUBCASE("one-letter rule") {
    const auto rule = rule_of("A -> AA");
    const auto ss = self_similar_config(rule, perron_data(transition_matrix(rule)));
    REQUIRE(ss.has_value());
    CHECK(close(ss->kappa, 0.5));
  }
}
