#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cobar/chain_complex.hpp"
#include "cobar/simplicial.hpp"

namespace cobar {

/// An integer chain of nondegenerate simplices of K in a single degree.
/// Degenerate simplices are dropped on insertion.
struct NormalizedChain {
  int degree = 0;
  std::map<SimplexId, std::int64_t> terms;

  void add(const SimplexRef& r, std::int64_t coeff);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const NormalizedChain&) const = default;
};

/// sum_i (-1)^i d_i sigma in normalized chains.
NormalizedChain normalized_boundary(SimplexId sigma, const ReducedSimplicialSet& K);

struct AwTerm {
  SimplexRef front;
  SimplexRef back;
};

/// Alexander-Whitney coproduct: all n+1 terms sigma|[0..i] (x) sigma|[i..n], i = 0..n.
/// Terms with a degenerate factor are kept; normalized consumers drop them.
std::vector<AwTerm> aw_coproduct(const SimplexRef& sigma, const ReducedSimplicialSet& K);

struct CoassociativityReport {
  bool passed = true;
  std::size_t simplices_checked = 0;
  std::vector<std::string> failures;
};

/// (Delta (x) id) Delta == (id (x) Delta) Delta on every nondegenerate simplex
/// of dimension <= max_dim, both literally and after normalization.
CoassociativityReport coassociativity_check(const ReducedSimplicialSet& K, int max_dim);

/// An m-simplex of the cube (Delta^1)^n: m+1 vertices of {0,1}^n (bit c is
/// coordinate c), weakly increasing in the product order.
struct CubeSimplex {
  int n = 0;
  std::vector<std::uint32_t> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  bool is_valid() const;
  bool is_nondegenerate() const;
  auto operator<=>(const CubeSimplex&) const = default;
};

using CubeChain = std::map<CubeSimplex, std::int64_t>;

void add_to(CubeChain& chain, const CubeSimplex& s, std::int64_t coeff);
CubeChain cube_boundary(const CubeSimplex& s);
CubeChain cube_boundary(const CubeChain& c);

/// Eilenberg-Zilber shuffle map (Delta^1)^p x (Delta^1)^q -> (Delta^1)^{p+q};
/// the first factor occupies coordinates 0..p-1.
CubeChain ez_shuffle(const CubeSimplex& a, const CubeSimplex& b);
CubeChain ez_shuffle(const CubeChain& a, const CubeChain& b);

/// The nondegenerate 1-simplex of Delta^1.
CubeSimplex interval_edge();
/// The unique vertex of the 0-cube.
CubeSimplex cube_point();
/// e x e x ... x e (n factors); the point for n = 0.
CubeChain edge_power(int n);

/// Nondegenerate m-simplices of (Delta^1)^n, in a fixed order.
std::vector<CubeSimplex> cube_simplices(int n, int m);

/// Normalized simplicial chains of (Delta^1)^n in degrees 0..max_degree.
IntegerComplex cube_simplicial_chains(int n, int max_degree);

}  // namespace cobar
