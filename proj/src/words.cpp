#include "cobar/words.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cobar {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ w.size();
  for (SimplexId x : w) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void add_term(WordCombination& c, const Word& w, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = c.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) c.erase(it);
  }
}

void add_scaled(WordCombination& c, const WordCombination& x, std::int64_t coeff) {
  for (const auto& [w, v] : x) add_term(c, w, v * coeff);
}

bool same_combination(const WordCombination& a, const WordCombination& b) {
  WordCombination diff = a;
  add_scaled(diff, b, -1);
  return diff.empty();
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::pair<Word, std::int64_t>> sorted_terms(const WordCombination& c) {
  std::vector<std::pair<Word, std::int64_t>> out(c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return word_less(x.first, y.first); });
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

int word_degree(const Word& w, const ReducedSimplicialSet& K) {
  int d = 0;
  for (SimplexId x : w) d += K.dim(x) - 1;
  return d;
}

std::string word_to_string(const Word& w, const ReducedSimplicialSet& K) {
  if (w.empty()) return "1";
  std::string out = "[";
  for (std::size_t k = 0; k < w.size(); ++k) out += (k ? "|" : "") + K.id_name(w[k]);
  return out + "]";
}

std::string combination_to_string(const WordCombination& c, const ReducedSimplicialSet& K) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, v] : sorted_terms(c)) {
    if (v < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    const std::int64_t a = v < 0 ? -v : v;
    if (a != 1) os << a << " ";
    os << word_to_string(w, K);
    first = false;
  }
  return os.str();
}

std::vector<Word> enumerate_words(const ReducedSimplicialSet& K, int degree, std::optional<int> max_length) {
  std::vector<Word> out;
  if (degree < 0) return out;
  std::vector<SimplexId> letters;
  int min_deg = 1 << 20;
  int max_deg = 0;
  for (SimplexId id = 1; id < K.size(); ++id) {
    letters.push_back(id);
    min_deg = std::min(min_deg, K.dim(id) - 1);
    max_deg = std::max(max_deg, K.dim(id) - 1);
  }
  int length_cap = 0;
  if (max_length) {
    length_cap = *max_length;
  } else if (!letters.empty() && min_deg == 0) {
    throw std::invalid_argument("word length must be bounded when the space has nondegenerate edges");
  } else {
    length_cap = degree;
  }
  if (letters.empty()) length_cap = 0;

  Word cur;
  std::function<void(std::size_t, int)> fill = [&](std::size_t remaining, int deg_left) {
    if (remaining == 0) {
      if (deg_left == 0) out.push_back(cur);
      return;
    }
    for (SimplexId id : letters) {
      const int d = K.dim(id) - 1;
      const int left = deg_left - d;
      const int slots = static_cast<int>(remaining) - 1;
      if (left < min_deg * slots || left > max_deg * slots) continue;
      cur.push_back(id);
      fill(remaining - 1, left);
      cur.pop_back();
    }
  };
  for (int len = 0; len <= length_cap; ++len) fill(static_cast<std::size_t>(len), degree);
  return out;
}

// ---------------------------------------------------------------------------

LetterDerivation::LetterDerivation(const ReducedSimplicialSet& K, std::vector<WordCombination> letter_images)
    : K_(&K), images_(std::move(letter_images)) {
  if (images_.size() != K.size()) throw std::invalid_argument("one image per simplex expected");
  for (SimplexId id = 0; id < K.size(); ++id) degrees_.push_back(K.dim(id) - 1);
}

WordCombination LetterDerivation::apply(const Word& w) const {
  WordCombination out;
  int offset = 0;
  Word buf;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int64_t sign = offset % 2 == 0 ? 1 : -1;
    for (const auto& [piece, c] : images_[w[i]]) {
      buf.clear();
      buf.insert(buf.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      buf.insert(buf.end(), piece.begin(), piece.end());
      buf.insert(buf.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
      add_term(out, buf, sign * c);
    }
    offset += degrees_[w[i]];
  }
  return out;
}

WordCombination LetterDerivation::apply(const WordCombination& x) const {
  WordCombination out;
  for (const auto& [w, c] : x) add_scaled(out, apply(w), c);
  return out;
}

IntegerComplex assemble_complex(const std::vector<std::vector<Word>>& bases,
                                const std::function<WordCombination(const Word&)>& column) {
  IntegerComplex C;
  std::vector<std::unordered_map<Word, std::uint32_t, WordHash>> index(bases.size());
  for (std::size_t n = 0; n < bases.size(); ++n) {
    C.basis_sizes.push_back(bases[n].size());
    index[n].reserve(bases[n].size());
    for (std::uint32_t k = 0; k < bases[n].size(); ++k) index[n].emplace(bases[n][k], k);
  }
  if (bases.empty()) return C;
  C.boundary.emplace_back(0, bases[0].size());
  for (std::size_t n = 1; n < bases.size(); ++n) {
    SparseMatrix d(bases[n - 1].size(), bases[n].size());
    for (std::size_t j = 0; j < bases[n].size(); ++j) {
      auto& col = d.columns[j];
      for (const auto& [w, v] : column(bases[n][j])) {
        auto it = index[n - 1].find(w);
        if (it == index[n - 1].end()) throw std::logic_error("boundary term outside the truncated basis");
        col.emplace_back(it->second, v);
      }
      std::sort(col.begin(), col.end());
    }
    C.boundary.push_back(std::move(d));
  }
  return C;
}

}  // namespace cobar
