#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobar/chain_complex.hpp"
#include "cobar/cobar.hpp"
#include "cobar/simplicial.hpp"
#include "cobar/words.hpp"

namespace cobar {

/// dim(T) = n_1 + ... + n_k - k for a necklace with beads of the given
/// dimensions; 0 for the empty list.
int necklace_dim(const std::vector<int>& bead_dims);

/// The cubical necklace model: the class [(f_1 v ... v f_k), i_n] with every
/// bead nondegenerate is stored as the Word (f_1, ..., f_k); the empty word is
/// the unit. Its cube dimension equals its cobar degree.
///
/// On a bead f of dimension p, coordinate s = 1..p-1 of the bead's cube
/// contributes
///
///   (-1)^{s+1} ( (f|0..s v f|s..p) + (d_s f) )
///
/// after reduction: a degenerate edge bead is deleted with a factor -1, a
/// degenerate bead of dimension >= 2 kills the term. Words pick up the usual
/// Koszul sign (-1)^{cube dim of the preceding beads}.
class NecklaceModel {
 public:
  explicit NecklaceModel(const ReducedSimplicialSet& K);

  const ReducedSimplicialSet& space() const { return derivation_.space(); }

  WordCombination differential(const Word& w) const { return derivation_.apply(w); }
  WordCombination differential(const WordCombination& x) const { return derivation_.apply(x); }

  std::vector<Word> basis(int degree, const TruncationPolicy& policy) const;

  /// Degrees 0..policy.max_degree. With a length bound L this is the quotient
  /// by the preimage under phi of the cobar monomials longer than L, so that
  /// phi induces an isomorphism onto the truncated cobar complex. Its basis is
  /// still the words of length <= L; a word of length L+1 is rewritten as
  /// minus the sum of its proper edge-deletions.
  IntegerComplex complex(const TruncationPolicy& policy) const;

  /// Rewrites words longer than `max_length` as in complex().
  WordCombination reduce(const WordCombination& x, int max_length) const;

 private:
  LetterDerivation derivation_;
};

inline Word fsq_product(const Word& a, const Word& b) { return concat(a, b); }

WordCombination fsq_differential(const Word& w, const ReducedSimplicialSet& K);
std::vector<Word> fsq_basis(const ReducedSimplicialSet& K, int degree, const TruncationPolicy& policy);

/// The algebra map to the cobar construction: an edge bead e goes to
/// [s^-1 e] - 1, a higher bead f to [s^-1 f], the unit to 1.
WordCombination phi(const Word& w, const ReducedSimplicialSet& K);
WordCombination phi(const WordCombination& x, const ReducedSimplicialSet& K);

SquareZeroReport fsq_square_zero(const ReducedSimplicialSet& K, const TruncationPolicy& policy);

struct PhiReport {
  bool bijection = true;
  bool unipotent = true;
  bool chain_map = true;
  bool multiplicative = true;
  std::size_t words_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return bijection && unipotent && chain_map && multiplicative; }
};

/// Degree by degree up to policy.max_degree: basis bijection with unipotent
/// triangular matrix, phi d = D phi on every basis word (exact, untruncated),
/// and phi(w1 v w2) = phi(w1) phi(w2) on `pairs` random basis pairs.
PhiReport verify_phi(const ReducedSimplicialSet& K, const TruncationPolicy& policy, std::uint64_t seed,
                     std::size_t pairs = 100);

}  // namespace cobar
