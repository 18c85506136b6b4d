#pragma once

// Independent reference implementations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "cobar/chain_complex.hpp"
#include "cobar/simplicial.hpp"

namespace oracle {

using cobar::SimplicialOperator;
using Step = SimplicialOperator::Step;
using Kind = SimplicialOperator::Kind;

// A simplicial operator as its vertex map [target_dim] -> [source_dim].
struct MonotoneMap {
  int source_dim = 0;
  std::vector<int> image;  // image[v] for v = 0..target_dim

  int target_dim() const { return static_cast<int>(image.size()) - 1; }
  bool operator==(const MonotoneMap&) const = default;
};

inline MonotoneMap identity_map(int n) {
  MonotoneMap m{n, {}};
  for (int v = 0; v <= n; ++v) m.image.push_back(v);
  return m;
}

// Steps in application order: x -> step_1 x -> step_2 step_1 x ... The vertex
// map of the composite is theta_1 o theta_2 o ... (precomposition).
inline MonotoneMap from_steps(const std::vector<Step>& steps, int source_dim) {
  MonotoneMap m = identity_map(source_dim);
  for (const Step& s : steps) {
    const int n = m.target_dim();
    std::vector<int> next;
    if (s.kind == Kind::Face) {
      for (int v = 0; v <= n - 1; ++v) next.push_back(m.image[v < s.index ? v : v + 1]);
    } else {
      for (int v = 0; v <= n + 1; ++v) next.push_back(m.image[v <= s.index ? v : v - 1]);
    }
    m.image = std::move(next);
  }
  return m;
}

inline MonotoneMap of(const SimplicialOperator& op) { return from_steps(op.steps(), op.source_dim()); }

// Normal form read off the map: faces are the missed source vertices,
// degeneracies the positions where the map repeats.
inline std::vector<int> missed_vertices(const MonotoneMap& m) {
  std::vector<int> out;
  for (int v = 0; v <= m.source_dim; ++v)
    if (std::find(m.image.begin(), m.image.end(), v) == m.image.end()) out.push_back(v);
  return out;
}

inline std::vector<int> repeats(const MonotoneMap& m) {
  std::vector<int> out;
  for (int v = 0; v + 1 < static_cast<int>(m.image.size()); ++v)
    if (m.image[v] == m.image[v + 1]) out.push_back(v);
  std::reverse(out.begin(), out.end());
  return out;
}

// Random operator word: length <= max_len, every intermediate dimension <= max_dim.
inline std::pair<std::vector<Step>, int> random_word(std::mt19937_64& rng, int max_len, int max_dim) {
  const int n0 = std::uniform_int_distribution<int>(0, max_dim)(rng);
  const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  std::vector<Step> steps;
  int n = n0;
  for (int k = 0; k < len; ++k) {
    const bool can_face = n > 0;
    const bool can_degen = n < max_dim;
    bool face = can_face;
    if (can_face && can_degen) face = std::uniform_int_distribution<int>(0, 1)(rng) == 0;
    if (face) {
      steps.push_back({Kind::Face, std::uniform_int_distribution<int>(0, n)(rng)});
      --n;
    } else {
      steps.push_back({Kind::Degeneracy, std::uniform_int_distribution<int>(0, n)(rng)});
      ++n;
    }
  }
  return {steps, n0};
}

// ---------------------------------------------------------------------------
// Smith normal form via gcds of minors: d_1 ... d_k = gcd of all k x k minors.

inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<mpz_class> minor_gcd_factors(const cobar::DenseMatrix& M) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows == 0 ? 0 : M.front().size();
  std::vector<mpz_class> factors;
  mpz_class previous = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    mpz_class g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = M[r[i]][c[j]];
        mpz_class d = bareiss_det(std::move(sub));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    factors.push_back(g / previous);
    previous = g;
  }
  return factors;
}

inline cobar::DenseMatrix random_matrix(std::mt19937_64& rng, int max_size, int bound) {
  std::uniform_int_distribution<int> size(1, max_size);
  std::uniform_int_distribution<int> entry(-bound, bound);
  const int r = size(rng);
  const int c = size(rng);
  // Sparse-ish and low-rank matrices exercise the interesting factor chains.
  const int style = std::uniform_int_distribution<int>(0, 2)(rng);
  cobar::DenseMatrix M(r, std::vector<mpz_class>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (style == 1 && std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
      M[i][j] = entry(rng);
    }
  if (style == 2 && r > 1) {
    for (int j = 0; j < c; ++j) M[r - 1][j] = 2 * M[0][j] - M[r > 2 ? 1 : 0][j];
  }
  return M;
}

}  // namespace oracle
