#pragma once

#include <string>
#include <vector>

#include "cobar/chain_complex.hpp"
#include "cobar/simplicial.hpp"
#include "cobar/words.hpp"

namespace cobar {

/// The cobar construction on the normalized chains of a reduced simplicial set:
/// the tensor algebra on s^-1 C_{>0}(K) with differential
///
///   D[s^-1 a] = -[s^-1 da] + sum_{0<j<n} (-1)^{j-1} [s^-1 a|0..j | s^-1 a|j..n]
///
/// extended as a derivation. The quadratic sign is (-1)^{deg s^-1 front}.
class CobarConstruction {
 public:
  explicit CobarConstruction(const ReducedSimplicialSet& K);

  const ReducedSimplicialSet& space() const { return derivation_.space(); }

  /// Untruncated D of a monomial.
  WordCombination differential(const Word& m) const { return derivation_.apply(m); }
  WordCombination differential(const WordCombination& x) const { return derivation_.apply(x); }
  const WordCombination& on_generator(SimplexId id) const { return derivation_.on_letter(id); }

  std::vector<Word> basis(int degree, const TruncationPolicy& policy) const;

  /// Degrees 0..policy.max_degree; with a length bound, the quotient by all
  /// monomials longer than the bound (D never shortens a monomial).
  IntegerComplex complex(const TruncationPolicy& policy) const;

 private:
  LetterDerivation derivation_;
};

inline Word cobar_product(const Word& a, const Word& b) { return concat(a, b); }
WordCombination cobar_product(const WordCombination& a, const WordCombination& b);

WordCombination cobar_differential(const Word& m, const ReducedSimplicialSet& K);
std::vector<Word> cobar_basis(const ReducedSimplicialSet& K, int degree, const TruncationPolicy& policy);
IntegerComplex cobar_complex(const ReducedSimplicialSet& K, const TruncationPolicy& policy);

struct SquareZeroReport {
  bool passed = true;
  std::size_t words_checked = 0;
  std::vector<std::string> failures;
};

/// D(D(m)) == 0, computed without truncation, for every basis monomial within
/// the policy bounds.
SquareZeroReport cobar_square_zero(const ReducedSimplicialSet& K, const TruncationPolicy& policy);

/// Degree-zero homology as a ring presentation: one generator A_e per
/// nondegenerate edge, one relation D[s^-1 t] = 0 per nondegenerate 2-simplex t.
struct RingRelation {
  std::string simplex;
  WordCombination raw;        // polynomial in the A_e, set equal to zero
  Word monoid_lhs;            // in the variables B_e = 1 - A_e: lhs = rhs
  Word monoid_rhs;
  bool trivial = false;       // lhs == rhs as words
  std::string raw_text;
  std::string monoid_text;
};

struct RingPresentation {
  std::vector<std::string> generators;
  std::vector<RingRelation> relations;

  bool is_free() const;
  /// Monoid-form relations, trivial ones omitted.
  std::vector<std::string> monoid_relations() const;
};

RingPresentation h0_ring_presentation(const ReducedSimplicialSet& K);

}  // namespace cobar
