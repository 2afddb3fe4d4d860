#include "iietlab/address.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace iietlab {

std::vector<Label> domain(const SubstitutionRule& rule) {
  std::vector<Label> labels;
  labels.reserve(static_cast<std::size_t>(rule.label_count()));
  for (int a = 0; a < rule.size(); ++a)
    for (int j = 1; j <= rule.image_length(a); ++j) labels.push_back({a, j});
  return labels;
}

std::vector<Label> parent_set(const SubstitutionRule& rule, int letter) {
  std::vector<Label> parents;
  for (int b = 0; b < rule.size(); ++b)
    for (int j = 1; j <= rule.image_length(b); ++j)
      if (rule.image_letter(b, j) == letter) parents.push_back({b, j});
  return parents;
}

bool validate_address(const SubstitutionRule& rule, const Address& digits) {
  if (digits.empty()) return false;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    const Label& d = digits[k];
    if (d.letter < 0 || d.letter >= rule.size()) return false;
    if (d.position < 1 || d.position > rule.image_length(d.letter)) return false;
    // Digit k+1 must contain the previous digit's letter at its position.
    if (k > 0 && rule.image_letter(d.letter, d.position) != digits[k - 1].letter) return false;
  }
  return true;
}

Address extremal_address(const SubstitutionRule& rule, int level, int letter, Extremal which) {
  if (level < 1) throw std::invalid_argument("extremal_address requires level >= 1");
  // Walk the type chain downward: the level below a Max digit is the image's
  // last letter, below a Min digit its first.
  std::vector<int> type(static_cast<std::size_t>(level));
  type[static_cast<std::size_t>(level - 1)] = letter;
  for (int k = level - 1; k >= 1; --k) {
    const int t = type[static_cast<std::size_t>(k)];
    const int pos = which == Extremal::Max ? rule.image_length(t) : 1;
    type[static_cast<std::size_t>(k - 1)] = rule.image_letter(t, pos);
  }
  Address digits(static_cast<std::size_t>(level));
  for (int k = 0; k < level; ++k) {
    const int t = type[static_cast<std::size_t>(k)];
    digits[static_cast<std::size_t>(k)] = {t, which == Extremal::Max ? rule.image_length(t) : 1};
  }
  return digits;
}

namespace {

// Supertile lengths per letter for levels 0..level-1, capped.
std::vector<std::vector<unsigned long long>> block_lengths(const SubstitutionRule& rule, int level,
                                                           std::size_t cap) {
  std::vector<std::vector<unsigned long long>> len(static_cast<std::size_t>(level));
  std::vector<unsigned long long> cur(static_cast<std::size_t>(rule.size()), 1ULL);
  for (int k = 0; k < level; ++k) {
    len[static_cast<std::size_t>(k)] = cur;
    std::vector<unsigned long long> next(static_cast<std::size_t>(rule.size()), 0ULL);
    for (int a = 0; a < rule.size(); ++a) {
      unsigned long long acc = 0;
      for (char c : rule.image(a)) {
        acc += cur[static_cast<std::size_t>(rule.letter_index(c))];
        if (acc > cap) throw CapError("supertile exceeds the word length cap");
      }
      next[static_cast<std::size_t>(a)] = acc;
    }
    cur.swap(next);
  }
  return len;
}

}  // namespace

Word address_to_word(const SubstitutionRule& rule, const Address& digits, std::size_t max_letters) {
  if (!validate_address(rule, digits)) throw std::invalid_argument("invalid address");
  const int n = static_cast<int>(digits.size());
  const int type = digits.back().letter;
  Word word = supertile(rule, type, n, max_letters);

  // Accumulate the block offsets of the origin, level by level from the top.
  const auto len = block_lengths(rule, n, max_letters);
  unsigned long long offset = 0;
  for (int k = n; k >= 1; --k) {
    const Label& d = digits[static_cast<std::size_t>(k - 1)];
    for (int i = 1; i < d.position; ++i)
      offset += len[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(rule.image_letter(d.letter, i))];
  }
  word.origin_index = static_cast<std::size_t>(offset) + 1;
  return word;
}

std::optional<int> first_increasable(const SubstitutionRule& rule, const Address& digits) {
  // For a valid address, the length-k prefix is maximal exactly when every
  // position up to k is final.
  for (std::size_t k = 0; k < digits.size(); ++k)
    if (digits[k].position < rule.image_length(digits[k].letter)) return static_cast<int>(k) + 1;
  return std::nullopt;
}

Address vershik(const SubstitutionRule& rule, const Address& digits) {
  if (!validate_address(rule, digits)) throw std::invalid_argument("invalid address");
  const std::optional<int> level = first_increasable(rule, digits);
  if (!level) throw std::domain_error("saturated address: successor not determined by known digits");
  const int n = *level;
  const Label& d = digits[static_cast<std::size_t>(n - 1)];

  Address out;
  out.reserve(digits.size());
  if (n > 1) {
    // The new slot's letter determines the minimal prefix that replaces the
    // maximal one.
    const int beta = rule.image_letter(d.letter, d.position + 1);
    out = extremal_address(rule, n - 1, beta, Extremal::Min);
  }
  out.push_back({d.letter, d.position + 1});
  out.insert(out.end(), digits.begin() + n, digits.end());
  return out;
}

Address shift_oracle(const SubstitutionRule& rule, const Address& digits, std::size_t max_letters) {
  const Word word = address_to_word(rule, digits, max_letters);
  if (*word.origin_index == word.size())
    throw std::domain_error("shift exits the supertile: origin is at the last position");

  const int n = static_cast<int>(digits.size());
  const auto len = block_lengths(rule, n, max_letters);

  // Re-read the digits of origin+1 off the recursive block structure: at each
  // level the digit is the containing type plus the block index holding the
  // offset, and the descent continues into that block.
  unsigned long long offset = *word.origin_index;  // 0-based position of the shifted origin
  int type = digits.back().letter;
  Address out(static_cast<std::size_t>(n));
  for (int k = n; k >= 1; --k) {
    int pos = 0;
    int sub = -1;
    for (int i = 1; i <= rule.image_length(type); ++i) {
      const int candidate = rule.image_letter(type, i);
      const unsigned long long bl = len[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(candidate)];
      if (offset < bl) {
        pos = i;
        sub = candidate;
        break;
      }
      offset -= bl;
    }
    out[static_cast<std::size_t>(k - 1)] = {type, pos};
    type = sub;
  }
  return out;
}

std::string format_address(const SubstitutionRule& rule, const Address& digits) {
  std::string out;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (k) out += '.';
    out += rule.letter(digits[k].letter);
    out += std::to_string(digits[k].position);
  }
  return out;
}

Address parse_address(const SubstitutionRule& rule, std::string_view text) {
  Address digits;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dot = text.find('.', pos);
    const std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (tok.size() < 2) throw std::invalid_argument("bad address digit `" + std::string(tok) + "`");
    const int letter = rule.letter_index(tok[0]);
    if (letter < 0) throw std::invalid_argument("unknown letter in address digit");
    int position = 0;
    for (char c : tok.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad position in address digit");
      position = position * 10 + (c - '0');
    }
    digits.push_back({letter, position});
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  if (!validate_address(rule, digits)) throw std::invalid_argument("invalid address");
  return digits;
}

}  // namespace iietlab
