#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cobar/chain_complex.hpp"
#include "cobar/simplicial.hpp"

namespace cobar {

/// An ordered word of nondegenerate simplices of positive dimension. The same
/// representation serves cobar monomials [s^-1 a_1 | ... | s^-1 a_k] and
/// necklace words (a_1 v ... v a_k); the empty word is the unit.
using Word = std::vector<SimplexId>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

using WordCombination = std::unordered_map<Word, std::int64_t, WordHash>;

void add_term(WordCombination& c, const Word& w, std::int64_t coeff);
void add_scaled(WordCombination& c, const WordCombination& x, std::int64_t coeff);
/// Drops zero coefficients and compares.
bool same_combination(const WordCombination& a, const WordCombination& b);

/// Canonical basis order: by length, then lexicographically by simplex index.
bool word_less(const Word& a, const Word& b);
std::vector<std::pair<Word, std::int64_t>> sorted_terms(const WordCombination& c);

Word concat(const Word& a, const Word& b);

/// sum over letters of (dim - 1).
int word_degree(const Word& w, const ReducedSimplicialSet& K);

std::string word_to_string(const Word& w, const ReducedSimplicialSet& K);
std::string combination_to_string(const WordCombination& c, const ReducedSimplicialSet& K);

/// Degree bound N and optional word-length bound L.
struct TruncationPolicy {
  int max_degree = 4;
  std::optional<int> max_length;
};

/// All words of the given degree and length <= max_length, in canonical order.
/// Without a length bound the enumeration is finite only when K has no
/// nondegenerate edges; otherwise std::invalid_argument is thrown.
std::vector<Word> enumerate_words(const ReducedSimplicialSet& K, int degree, std::optional<int> max_length);

/// A degree -1 derivation of the free monoid ring on the positive simplices,
/// determined by its value on single letters:
///   D(xy) = D(x) y + (-1)^{deg x} x D(y).
class LetterDerivation {
 public:
  LetterDerivation(const ReducedSimplicialSet& K, std::vector<WordCombination> letter_images);

  const ReducedSimplicialSet& space() const { return *K_; }
  const WordCombination& on_letter(SimplexId id) const { return images_.at(id); }

  WordCombination apply(const Word& w) const;
  WordCombination apply(const WordCombination& x) const;

 private:
  const ReducedSimplicialSet* K_;
  std::vector<WordCombination> images_;
  std::vector<int> degrees_;
};

/// Assembles an IntegerComplex on explicit word bases. `column(w)` must return
/// a combination of words from bases[deg w - 1].
IntegerComplex assemble_complex(const std::vector<std::vector<Word>>& bases,
                                const std::function<WordCombination(const Word&)>& column);

}  // namespace cobar
