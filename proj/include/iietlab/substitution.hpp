#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iietlab/errors.hpp"
#include "iietlab/limits.hpp"

namespace iietlab {

// A finite word over the alphabet, optionally marked with the 1-based
// position of the letter sitting at coordinate 0.
struct Word {
  std::string letters;
  std::optional<std::size_t> origin_index;  // 1-based, within [1, size()]

  std::size_t size() const { return letters.size(); }
};

// A substitution rule: an ordered alphabet of single-character letters plus
// one nonempty image word per letter. Immutable after parse; all letters are
// handled as indices into the alphabet internally.
class SubstitutionRule {
public:
  // Text format: one `LETTER -> WORD` per line, letters from [A-Za-z0-9],
  // `#` starts a comment, blank lines ignored. The alphabet is ordered by
  // first appearance on left-hand sides.
  static SubstitutionRule parse(std::string_view text);

  int size() const { return static_cast<int>(alphabet_.size()); }
  const std::string& alphabet() const { return alphabet_; }
  char letter(int i) const { return alphabet_[static_cast<std::size_t>(i)]; }
  int letter_index(char c) const { return index_[static_cast<unsigned char>(c)]; }

  const std::string& image(int letter) const { return images_[static_cast<std::size_t>(letter)]; }
  int image_length(int letter) const { return static_cast<int>(images_[static_cast<std::size_t>(letter)].size()); }
  // Letter index at 1-based position `pos` of the image of `letter`.
  int image_letter(int letter, int pos) const {
    return letter_index(images_[static_cast<std::size_t>(letter)][static_cast<std::size_t>(pos - 1)]);
  }

  // True when every image has the same length; reports it through `k`.
  bool constant_length(int* k = nullptr) const;

  // Total number of (letter, position) labels, i.e. the sum of image lengths.
  int label_count() const { return offsets_.back(); }
  // Offset of letter's label block inside [0, label_count()).
  int label_offset(int letter) const { return offsets_[static_cast<std::size_t>(letter)]; }

private:
  SubstitutionRule() = default;

  std::string alphabet_;
  std::vector<std::string> images_;
  std::vector<int> offsets_;  // size() + 1 prefix sums of image lengths
  std::array<int, 256> index_{};
};

// Nonnegative integer matrix with entry (i, j) counting letter i in the
// image of letter j. Column j therefore sums to the length of image j.
struct TransitionMatrix {
  int n = 0;
  std::vector<long long> entries;  // row-major

  long long at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

TransitionMatrix transition_matrix(const SubstitutionRule& rule);

// Dominant eigendata of a transition matrix. `frequencies` is the right
// eigenvector normalized to sum 1 (letter frequencies, cylinder measures);
// `natural_lengths` is the left eigenvector scaled so that the pairing with
// frequencies is 1 (tile lengths for suspension views; entries may be zero
// when the matrix is not primitive).
struct PerronData {
  double lambda = 0.0;
  std::vector<double> frequencies;
  std::vector<double> natural_lengths;
};

// Power iteration from the uniform vector, relative tolerance 1e-14, at most
// 1e6 sweeps. Throws NumericError when the iteration stalls (tied dominant
// moduli) and AssumptionError when the limit has a zero-frequency letter.
PerronData perron_data(const TransitionMatrix& m);

struct PrimitivityResult {
  bool primitive = false;
  std::optional<int> witness_power;  // smallest k with M^k entrywise positive
};

// Checks powers up to the Wielandt bound (s-1)^2 + 1 on the zero pattern.
PrimitivityResult primitivity_check(const TransitionMatrix& m);

// n-fold image of a letter. Throws CapError when the result would exceed
// `max_letters`.
Word supertile(const SubstitutionRule& rule, int letter, int level,
               std::size_t max_letters = kMaxWordLetters);

// Length of the n-fold image without materializing it; overflow raises CapError.
unsigned long long supertile_length(const SubstitutionRule& rule, int letter, int level);

// Measure of the level-n cylinder of `letter`: frequency / lambda^n.
double cylinder_measure(const PerronData& perron, int letter, int level);

}  // namespace iietlab
