#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iietlab/substitution.hpp"

namespace iietlab {

// One digit of the supertile numeration: a letter together with a 1-based
// position inside that letter's image word.
struct Label {
  int letter = 0;
  int position = 1;

  auto operator<=>(const Label&) const = default;
};

// A finite address, least level first. Digit k records where the (k-1)-block
// sits inside its k-block: for k >= 2 the digit must lie in the parent set of
// the previous digit's letter; the first digit is unconstrained.
using Address = std::vector<Label>;

enum class Extremal { Min, Max };

// All labels (letter, position), ordered by alphabet then position.
std::vector<Label> domain(const SubstitutionRule& rule);

// All labels (beta, j) whose image has `letter` at position j, in canonical
// order (alphabet order of beta, then ascending j).
std::vector<Label> parent_set(const SubstitutionRule& rule, int letter);

// True when every consecutive pair of digits satisfies the parent condition
// and every position is within its image. A single digit is always valid.
bool validate_address(const SubstitutionRule& rule, const Address& digits);

// Address of the first (Min) or last (Max) position of the level-n supertile
// of `letter`. Requires level >= 1.
Address extremal_address(const SubstitutionRule& rule, int level, int letter, Extremal which);

// Materializes the supertile a valid address lives in, with origin_index set
// to the addressed position. The letter found there is the position-j1 letter
// of the first digit's image.
Word address_to_word(const SubstitutionRule& rule, const Address& digits,
                     std::size_t max_letters = kMaxWordLetters);

// Smallest level whose prefix is not a maximal address, or nullopt when every
// prefix is maximal (the successor is not determined by the known digits).
std::optional<int> first_increasable(const SubstitutionRule& rule, const Address& digits);

// Successor map on addresses: resets the maximal prefix below the first
// increasable level to the matching minimal address, bumps that level's
// position by one, and keeps the tail. Throws std::domain_error on a
// saturated address.
Address vershik(const SubstitutionRule& rule, const Address& digits);

// Brute-force successor: materialize the supertile, advance the origin by one
// letter, and read the digits back off the recursive block structure. Shares
// no logic with vershik(); kept as an independent cross-check. Throws
// std::domain_error when the shift exits the supertile.
Address shift_oracle(const SubstitutionRule& rule, const Address& digits,
                     std::size_t max_letters = kMaxWordLetters);

// Dot-separated digits, least level first, e.g. "B2.A2.A1".
std::string format_address(const SubstitutionRule& rule, const Address& digits);
Address parse_address(const SubstitutionRule& rule, std::string_view text);

}  // namespace iietlab
