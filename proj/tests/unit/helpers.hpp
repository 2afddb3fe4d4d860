#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "iietlab/partition.hpp"
#include "iietlab/substitution.hpp"

namespace testutil {

inline const char* kPeriodDoubling = "A -> AB\nB -> AA\n";
inline const char* kFibonacci = "A -> AB\nB -> A\n";
inline const char* kThueMorse = "A -> AB\nB -> BA\n";
inline const char* kTribonacci = "A -> AB\nB -> AC\nC -> A\n";
inline const char* kChacon = "0 -> 0010\n1 -> 1\n";
inline const char* kFibonacciSquared = "A -> ABA\nB -> AB\n";
inline const char* kEndsSame = "A -> BBA\nB -> BA\n";
inline const char* kRudinShapiro = "a -> ab\nb -> ac\nc -> db\nd -> dc\n";

inline iietlab::SubstitutionRule rule_of(std::string_view text) {
  return iietlab::SubstitutionRule::parse(text);
}

inline iietlab::PhiConfig config_of(std::string_view text, bool assume_minimal = false) {
  const auto rule = rule_of(text);
  const auto perron = iietlab::perron_data(iietlab::transition_matrix(rule));
  return iietlab::default_config(rule, perron, std::nullopt, std::nullopt, assume_minimal);
}

inline bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) <= tol; }

// Minimal well-formedness check: declaration optional, tags balanced,
// attributes quoted, no stray '<' or '>'.
bool xml_well_formed(std::string_view doc);

// Number of occurrences of a literal needle.
inline std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t count = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// Values of a data attribute, e.g. data-y="...", parsed as doubles.
std::vector<double> data_attribute_values(std::string_view doc, std::string_view name);

}  // namespace testutil
