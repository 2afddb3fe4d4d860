#include "doctest.h"

#include <numeric>

#include "helpers.hpp"
#include "iietlab/substitution.hpp"

using namespace iietlab;
using namespace testutil;

TEST_CASE("parse accepts the documented format") {
  const auto rule = rule_of("# comment\nA -> AB\n\nB -> AA  # trailing\n");
  CHECK(rule.alphabet() == "AB");
  CHECK(rule.image(0) == "AB");
  CHECK(rule.image(1) == "AA");
  CHECK(rule.label_count() == 4);

  const auto single = rule_of("A -> A");
  CHECK(single.size() == 1);
  CHECK(single.image(0) == "A");
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(rule_of("A -> AB\nA -> B\n"), ParseError);   // duplicate LHS
  CHECK_THROWS_AS(rule_of("A -> AX\n"), ParseError);           // undeclared letter
  CHECK_THROWS_AS(rule_of("A ->\n"), ParseError);              // empty image
  CHECK_THROWS_AS(rule_of(""), ParseError);                    // empty input
  CHECK_THROWS_AS(rule_of("# only comments\n"), ParseError);
  CHECK_THROWS_AS(rule_of("AB -> A\n"), ParseError);           // multi-letter LHS
  CHECK_THROWS_AS(rule_of("A = AB\n"), ParseError);            // missing arrow
}

TEST_CASE("transition matrices count image letters") {
  const auto pd = transition_matrix(rule_of(kPeriodDoubling));
  CHECK(pd.at(0, 0) == 1);
  CHECK(pd.at(0, 1) == 2);
  CHECK(pd.at(1, 0) == 1);
  CHECK(pd.at(1, 1) == 0);

  const auto fib = transition_matrix(rule_of(kFibonacci));
  CHECK(fib.at(0, 0) == 1);
  CHECK(fib.at(0, 1) == 1);
  CHECK(fib.at(1, 0) == 1);
  CHECK(fib.at(1, 1) == 0);

  const auto chacon = transition_matrix(rule_of(kChacon));
  CHECK(chacon.at(0, 0) == 3);
  CHECK(chacon.at(0, 1) == 0);
  CHECK(chacon.at(1, 0) == 1);
  CHECK(chacon.at(1, 1) == 1);

  // Column sums are the image lengths.
  const auto rule = rule_of(kTribonacci);
  const auto m = transition_matrix(rule);
  for (int j = 0; j < m.n; ++j) {
    long long sum = 0;
    for (int i = 0; i < m.n; ++i) sum += m.at(i, j);
    CHECK(sum == rule.image_length(j));
  }
}

TEST_CASE("dominant eigendata") {
  SUBCASE("period doubling") {
    const auto p = perron_data(transition_matrix(rule_of(kPeriodDoubling)));
    CHECK(close(p.lambda, 2.0));
    CHECK(close(p.frequencies[0], 2.0 / 3.0));
    CHECK(close(p.frequencies[1], 1.0 / 3.0));
    CHECK(close(p.natural_lengths[0], 1.0));
    CHECK(close(p.natural_lengths[1], 1.0));
  }
  SUBCASE("fibonacci") {
    const auto p = perron_data(transition_matrix(rule_of(kFibonacci)));
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(close(p.lambda, 1.618033988749895, 1e-13));
    CHECK(close(p.frequencies[0], 1.0 / phi, 1e-13));
    CHECK(close(p.frequencies[1], 1.0 / (phi * phi), 1e-13));
  }
  SUBCASE("chacon: dominant pair exists despite non-primitivity") {
    const auto p = perron_data(transition_matrix(rule_of(kChacon)));
    CHECK(close(p.lambda, 3.0));
    CHECK(close(p.frequencies[0], 2.0 / 3.0));
    CHECK(close(p.frequencies[1], 1.0 / 3.0));
    // The second letter carries no natural length.
    CHECK(close(p.natural_lengths[0], 1.5));
    CHECK(close(p.natural_lengths[1], 0.0));
  }
  SUBCASE("zero-frequency letters are rejected") {
    CHECK_THROWS_AS(perron_data(transition_matrix(rule_of("A -> AA\nB -> B\n"))), AssumptionError);
  }
  SUBCASE("residuals and normalization") {
    for (const char* text : {kPeriodDoubling, kFibonacci, kThueMorse, kTribonacci, kChacon}) {
      const auto m = transition_matrix(rule_of(text));
      const auto p = perron_data(m);
      const double sum = std::accumulate(p.frequencies.begin(), p.frequencies.end(), 0.0);
      CHECK(close(sum, 1.0));
      double pairing = 0.0, res = 0.0;
      for (int i = 0; i < m.n; ++i) {
        pairing += p.natural_lengths[i] * p.frequencies[i];
        double mr = 0.0;
        for (int j = 0; j < m.n; ++j) mr += static_cast<double>(m.at(i, j)) * p.frequencies[j];
        res = std::max(res, std::fabs(mr - p.lambda * p.frequencies[i]));
      }
      CHECK(close(pairing, 1.0));
      CHECK(res < 1e-12);
    }
  }
}

TEST_CASE("primitivity witnesses") {
  const auto pd = primitivity_check(transition_matrix(rule_of(kPeriodDoubling)));
  CHECK(pd.primitive);
  CHECK(pd.witness_power == 2);

  const auto chacon = primitivity_check(transition_matrix(rule_of(kChacon)));
  CHECK_FALSE(chacon.primitive);
  CHECK_FALSE(chacon.witness_power.has_value());

  const auto scalar = primitivity_check(transition_matrix(rule_of("A -> AA")));
  CHECK(scalar.primitive);
  CHECK(scalar.witness_power == 1);
}

TEST_CASE("supertiles") {
  const auto pd = rule_of(kPeriodDoubling);
  CHECK(supertile(pd, 0, 3).letters == "ABAAABAB");
  CHECK(supertile(pd, 1, 1).letters == "AA");
  CHECK(supertile(pd, 0, 0).letters == "A");
  CHECK(supertile(pd, 1, 0).letters == "B");
  CHECK_THROWS_AS(supertile(pd, 0, 40), CapError);  // 2^40 letters

  // Lengths match the matrix prediction (1..1) M^n for every level and rule.
  for (const char* text : {kPeriodDoubling, kFibonacci, kThueMorse, kTribonacci, kChacon}) {
    const auto rule = rule_of(text);
    const auto m = transition_matrix(rule);
    std::vector<long long> ones(static_cast<std::size_t>(m.n), 1);
    for (int n = 0; n <= 8; ++n) {
      for (int a = 0; a < m.n; ++a) {
        CHECK(supertile(rule, a, n).size() == static_cast<std::size_t>(ones[a]));
        CHECK(supertile_length(rule, a, n) == static_cast<unsigned long long>(ones[a]));
      }
      std::vector<long long> next(static_cast<std::size_t>(m.n), 0);
      for (int j = 0; j < m.n; ++j)
        for (int i = 0; i < m.n; ++i) next[j] += ones[i] * m.at(i, j);
      ones = next;
    }
  }
}

TEST_CASE("cylinder measures") {
  const auto pd = rule_of(kPeriodDoubling);
  const auto p = perron_data(transition_matrix(pd));
  CHECK(close(cylinder_measure(p, 0, 0), 2.0 / 3.0));
  CHECK(close(cylinder_measure(p, 1, 2), 1.0 / 12.0));
  CHECK(cylinder_measure(p, 0, 200) < 1e-12);  // decays with the level

  for (const char* text : {kPeriodDoubling, kFibonacci, kThueMorse, kTribonacci, kChacon}) {
    const auto rule = rule_of(text);
    const auto perron = perron_data(transition_matrix(rule));
    for (int n = 0; n <= 6; ++n) {
      double sum = 0.0;
      for (int a = 0; a < rule.size(); ++a) sum += cylinder_measure(perron, a, n);
      CHECK(close(sum, std::pow(perron.lambda, -n)));
    }
  }
}

TEST_CASE("constant length detection") {
  int k = 0;
  CHECK(rule_of(kPeriodDoubling).constant_length(&k));
  CHECK(k == 2);
  CHECK_FALSE(rule_of(kFibonacci).constant_length());
  CHECK_FALSE(rule_of(kChacon).constant_length());
}
