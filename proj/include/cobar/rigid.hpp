#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cobar/chain_complex.hpp"
#include "cobar/chains.hpp"
#include "cobar/necklace.hpp"
#include "cobar/simplicial.hpp"
#include "cobar/words.hpp"

namespace cobar {

/// A simplex of the mapping space C(K)(x, x) in its unique normal form: a word
/// with every bead nondegenerate, together with a nondegenerate simplex of the
/// word's cube that lies in no proper face of the cube. Such a simplex runs
/// from (0,...,0) to (1,...,1), so it is an ordered partition of the cube
/// coordinates: blocks[c] is the step at which coordinate c switches to 1.
///
/// Coordinates are ordered bead by bead, and within a bead of dimension p by
/// inner vertex 1..p-1 (coordinate 1 at vertex s means "the path passes s").
struct RigidGenerator {
  Word word;
  std::vector<std::uint8_t> blocks;
  int degree = 0;

  auto operator<=>(const RigidGenerator&) const = default;
};

using RigidChain = std::map<RigidGenerator, std::int64_t>;

void add_to(RigidChain& chain, const RigidGenerator& g, std::int64_t coeff);

/// A bead before reduction: any simplex of K, with the step index of each of
/// its inner vertices.
struct RawBead {
  SimplexRef simplex;
  std::vector<int> inner_blocks;
};

class RigidModel {
 public:
  explicit RigidModel(const ReducedSimplicialSet& K) : K_(&K) {}

  const ReducedSimplicialSet& space() const { return *K_; }

  /// Rewrites a raw necklace simplex to normal form: degenerate beads are
  /// pushed through their codegeneracy (dropping collapsed beads, taking the
  /// earliest step over merged coordinates). Returns nullopt when the image
  /// simplex is degenerate.
  std::optional<RigidGenerator> normalize(const std::vector<RawBead>& beads, int degree) const;

  RigidChain boundary(const RigidGenerator& g) const;
  RigidChain boundary(const RigidChain& c) const;

  /// [g, s] . [g', s'] = [g v g', s x s'] with the Eilenberg-Zilber map.
  RigidChain concat_product(const RigidChain& a, const RigidChain& b) const;
  /// The composition as written for C(K): [g, s] (x) [g', s'] -> [g' v g, s' x s].
  RigidChain composition_product(const RigidChain& a, const RigidChain& b) const {
    return concat_product(b, a);
  }

  /// All normal-form generators on the word in the given degree.
  std::vector<RigidGenerator> generators(const Word& w, int degree) const;

  CubeSimplex cube_simplex(const RigidGenerator& g) const;
  RigidGenerator from_cube_simplex(const Word& w, const CubeSimplex& s) const;

  int cube_dim(const Word& w) const { return word_degree(w, *K_); }

 private:
  const ReducedSimplicialSet* K_;
};

std::string generator_to_string(const RigidGenerator& g, const ReducedSimplicialSet& K);
std::string chain_to_string(const RigidChain& c, const ReducedSimplicialSet& K);

/// Totally nondegenerate words with cube dimension <= max_cube_dim and length
/// within the policy.
std::vector<Word> enumerate_necklace_maps(const ReducedSimplicialSet& K, int max_cube_dim,
                                          const TruncationPolicy& policy);

/// Length bound used by the rigid and psi computations: the policy's bound, or
/// max_degree when the space has no edges (every word of degree <= max_degree
/// then fits).
int rigid_length_bound(const ReducedSimplicialSet& K, int max_degree, const TruncationPolicy& policy);

struct TruncatedComplex {
  IntegerComplex complex;
  std::size_t frontier = 0;  // generators dropped because a boundary term left the bounds
  std::vector<std::string> warnings;
};

/// Chains on C(K)(x,x) in degrees 0..max_degree over words of length <= L:
/// the largest subcomplex spanned by normal-form generators within the bound.
struct RigidComplex : TruncatedComplex {
  std::vector<std::vector<RigidGenerator>> basis;
};
RigidComplex rigid_chain_complex(const ReducedSimplicialSet& K, int max_degree, const TruncationPolicy& policy);

/// The largest subcomplex of the necklace model spanned by words of length <= L
/// and degree <= max_degree.
TruncatedComplex fsq_closed_complex(const ReducedSimplicialSet& K, int max_degree, int max_length);

/// psi(w) = (-1)^{sum of bead dimensions} [w, e x ... x e]. The sign matches
/// the necklace model's orientation convention.
RigidChain psi(const Word& w, const ReducedSimplicialSet& K);
RigidChain psi(const WordCombination& x, const ReducedSimplicialSet& K);

struct PsiReport {
  bool chain_map = true;
  bool homology_agrees = true;
  bool product_consistent = true;
  /// "concatenation" if psi(w1 v w2) = psi(w1).psi(w2) for the concatenating
  /// product, "reversed" if it matches the written composition order only,
  /// "both" if every sampled pair commuted.
  std::string product_order;
  std::size_t words_checked = 0;
  std::size_t pairs_checked = 0;
  int length_bound = 0;
  HomologyResult fsq_homology;
  HomologyResult rigid_homology;
  std::size_t rigid_frontier = 0;
  std::size_t fsq_frontier = 0;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;

  bool passed() const { return chain_map && homology_agrees && product_consistent; }
};

PsiReport verify_psi(const ReducedSimplicialSet& K, int max_degree, const TruncationPolicy& policy,
                     std::uint64_t seed, std::size_t pairs = 50);

}  // namespace cobar
