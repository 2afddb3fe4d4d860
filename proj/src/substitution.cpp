#include "iietlab/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace iietlab {

namespace {

bool rule_letter(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

SubstitutionRule SubstitutionRule::parse(std::string_view text) {
  SubstitutionRule rule;
  rule.index_.fill(-1);

  std::size_t lineno = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    ++lineno;
    const std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected `LETTER -> WORD`");
    const std::string_view lhs = trim(line.substr(0, arrow));
    const std::string_view rhs = trim(line.substr(arrow + 2));
    if (lhs.size() != 1 || !rule_letter(lhs[0]))
      throw ParseError("line " + std::to_string(lineno) +
                       ": left-hand side must be a single letter from [A-Za-z0-9]");
    if (rhs.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty image for `" +
                       std::string(lhs) + "`");
    for (char c : rhs)
      if (!rule_letter(c))
        throw ParseError("line " + std::to_string(lineno) + ": invalid image character `" +
                         std::string(1, c) + "`");
    if (rule.index_[static_cast<unsigned char>(lhs[0])] >= 0)
      throw ParseError("line " + std::to_string(lineno) + ": duplicate left-hand letter `" +
                       std::string(lhs) + "`");

    rule.index_[static_cast<unsigned char>(lhs[0])] = static_cast<int>(rule.alphabet_.size());
    rule.alphabet_ += lhs[0];
    rule.images_.emplace_back(rhs);
  }

  if (rule.alphabet_.empty()) throw ParseError("empty input: no rules found");

  for (std::size_t i = 0; i < rule.images_.size(); ++i)
    for (char c : rule.images_[i])
      if (rule.index_[static_cast<unsigned char>(c)] < 0)
        throw ParseError("image of `" + std::string(1, rule.alphabet_[i]) +
                         "` uses undeclared letter `" + std::string(1, c) + "`");

  rule.offsets_.resize(rule.images_.size() + 1, 0);
  for (std::size_t i = 0; i < rule.images_.size(); ++i)
    rule.offsets_[i + 1] = rule.offsets_[i] + static_cast<int>(rule.images_[i].size());
  return rule;
}

bool SubstitutionRule::constant_length(int* k) const {
  const int len = image_length(0);
  for (int i = 1; i < size(); ++i)
    if (image_length(i) != len) return false;
  if (k) *k = len;
  return true;
}

TransitionMatrix transition_matrix(const SubstitutionRule& rule) {
  const int n = rule.size();
  TransitionMatrix m;
  m.n = n;
  m.entries.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j)
    for (char c : rule.image(j)) ++m.entries[static_cast<std::size_t>(rule.letter_index(c)) * n + j];
  return m;
}

namespace {

// One multiply of the iteration vector; `transpose` flips the index roles.
void apply(const TransitionMatrix& m, bool transpose, const std::vector<double>& x,
           std::vector<double>& y) {
  const int n = m.n;
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += static_cast<double>(transpose ? m.at(j, i) : m.at(i, j)) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc;
  }
}

struct IterationResult {
  std::vector<double> vec;  // sums to 1
  double lambda = 0.0;
};

IterationResult power_iterate(const TransitionMatrix& m, bool transpose) {
  const int n = m.n;
  std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  double lambda = 0.0;
  for (long iter = 0; iter < 1'000'000; ++iter) {
    apply(m, transpose, x, y);
    const double s = std::accumulate(y.begin(), y.end(), 0.0);
    if (!(s > 0.0)) throw NumericError("power iteration degenerated to the zero vector");
    double diff = 0.0;
    for (int i = 0; i < n; ++i) {
      y[static_cast<std::size_t>(i)] /= s;
      diff = std::max(diff, std::fabs(y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
    }
    const double dl = std::fabs(s - lambda);
    x.swap(y);
    lambda = s;
    if (diff <= 1e-14 && dl <= 1e-14 * std::max(1.0, lambda)) return {std::move(x), lambda};
  }
  throw NumericError("power iteration did not converge; dominant eigenvalue may be tied in modulus");
}

}  // namespace

PerronData perron_data(const TransitionMatrix& m) {
  if (m.n <= 0) throw NumericError("empty transition matrix");

  IterationResult right = power_iterate(m, false);
  for (double v : right.vec)
    if (!(v > 1e-12))
      throw AssumptionError("right eigenvector has a zero-frequency letter; not supported");

  IterationResult left = power_iterate(m, true);

  PerronData out;
  out.lambda = right.lambda;
  out.frequencies = std::move(right.vec);

  double pairing = 0.0;
  for (int i = 0; i < m.n; ++i) pairing += left.vec[static_cast<std::size_t>(i)] * out.frequencies[static_cast<std::size_t>(i)];
  if (!(pairing > 0.0)) throw NumericError("left/right eigenvector pairing is not positive");
  out.natural_lengths.resize(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) out.natural_lengths[static_cast<std::size_t>(i)] = left.vec[static_cast<std::size_t>(i)] / pairing;

  // Residual checks on both sides, plus normalization.
  double res = 0.0, sum = 0.0;
  std::vector<double> mr(static_cast<std::size_t>(m.n));
  apply(m, false, out.frequencies, mr);
  for (int i = 0; i < m.n; ++i) {
    res = std::max(res, std::fabs(mr[static_cast<std::size_t>(i)] - out.lambda * out.frequencies[static_cast<std::size_t>(i)]));
    sum += out.frequencies[static_cast<std::size_t>(i)];
  }
  std::vector<double> lm(static_cast<std::size_t>(m.n));
  apply(m, true, out.natural_lengths, lm);
  for (int i = 0; i < m.n; ++i)
    res = std::max(res, std::fabs(lm[static_cast<std::size_t>(i)] - out.lambda * out.natural_lengths[static_cast<std::size_t>(i)]));
  if (res >= 1e-12 || std::fabs(sum - 1.0) >= 1e-12)
    throw NumericError("eigendata residual above 1e-12");
  return out;
}

PrimitivityResult primitivity_check(const TransitionMatrix& m) {
  const int n = m.n;
  std::vector<char> base(static_cast<std::size_t>(n) * n), cur(static_cast<std::size_t>(n) * n), next(static_cast<std::size_t>(n) * n);
  for (std::size_t k = 0; k < base.size(); ++k) base[k] = m.entries[k] > 0 ? 1 : 0;
  cur = base;
  const int bound = (n - 1) * (n - 1) + 1;
  for (int k = 1; k <= bound; ++k) {
    if (std::find(cur.begin(), cur.end(), 0) == cur.end()) return {true, k};
    std::fill(next.begin(), next.end(), 0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (cur[static_cast<std::size_t>(i) * n + l])
          for (int j = 0; j < n; ++j)
            if (base[static_cast<std::size_t>(l) * n + j]) next[static_cast<std::size_t>(i) * n + j] = 1;
    cur.swap(next);
  }
  return {false, std::nullopt};
}

unsigned long long supertile_length(const SubstitutionRule& rule, int letter, int level) {
  const int n = rule.size();
  std::vector<unsigned long long> len(static_cast<std::size_t>(n), 1ULL);
  std::vector<unsigned long long> next(static_cast<std::size_t>(n));
  for (int k = 0; k < level; ++k) {
    for (int a = 0; a < n; ++a) {
      unsigned long long acc = 0;
      for (char c : rule.image(a)) {
        const unsigned long long add = len[static_cast<std::size_t>(rule.letter_index(c))];
        if (acc > std::numeric_limits<unsigned long long>::max() - add)
          throw CapError("supertile length overflow");
        acc += add;
      }
      next[static_cast<std::size_t>(a)] = acc;
    }
    len.swap(next);
  }
  return len[static_cast<std::size_t>(letter)];
}

Word supertile(const SubstitutionRule& rule, int letter, int level, std::size_t max_letters) {
  const unsigned long long total = supertile_length(rule, letter, level);
  if (total > max_letters)
    throw CapError("supertile of level " + std::to_string(level) + " has " + std::to_string(total) +
                   " letters, above the cap of " + std::to_string(max_letters));
  std::string cur(1, rule.letter(letter));
  std::string next;
  for (int k = 0; k < level; ++k) {
    next.clear();
    for (char c : cur) next += rule.image(rule.letter_index(c));
    cur.swap(next);
  }
  return Word{std::move(cur), std::nullopt};
}

double cylinder_measure(const PerronData& perron, int letter, int level) {
  return perron.frequencies[static_cast<std::size_t>(letter)] / std::pow(perron.lambda, level);
}

}  // namespace iietlab
