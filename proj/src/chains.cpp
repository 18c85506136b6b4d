#include "cobar/chains.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace cobar {

void NormalizedChain::add(const SimplexRef& r, std::int64_t coeff) {
  if (r.is_degenerate() || coeff == 0) return;
  auto& slot = terms[r.base];
  slot += coeff;
  if (slot == 0) terms.erase(r.base);
}

NormalizedChain normalized_boundary(SimplexId sigma, const ReducedSimplicialSet& K) {
  const int n = K.dim(sigma);
  if (n < 1) throw std::invalid_argument("boundary of the vertex is not defined in positive degree");
  NormalizedChain out;
  out.degree = n - 1;
  for (int i = 0; i <= n; ++i) out.add(K.face(sigma, i), (i % 2 == 0) ? 1 : -1);
  return out;
}

std::vector<AwTerm> aw_coproduct(const SimplexRef& sigma, const ReducedSimplicialSet& K) {
  std::vector<AwTerm> out;
  out.reserve(static_cast<std::size_t>(sigma.dim) + 1);
  for (int i = 0; i <= sigma.dim; ++i) {
    auto [front, back] = front_back_restrictions(sigma, i, K);
    out.push_back({std::move(front), std::move(back)});
  }
  return out;
}

CoassociativityReport coassociativity_check(const ReducedSimplicialSet& K, int max_dim) {
  using Triple = std::tuple<SimplexRef, SimplexRef, SimplexRef>;
  CoassociativityReport report;
  for (SimplexId id = 0; id < K.size(); ++id) {
    if (K.dim(id) > max_dim) continue;
    ++report.simplices_checked;
    std::vector<Triple> lhs;
    std::vector<Triple> rhs;
    try {
      for (const AwTerm& t : aw_coproduct(K.ref(id), K)) {
        for (const AwTerm& inner : aw_coproduct(t.front, K)) lhs.emplace_back(inner.front, inner.back, t.back);
        for (const AwTerm& inner : aw_coproduct(t.back, K)) rhs.emplace_back(t.front, inner.front, inner.back);
      }
    } catch (const std::exception& e) {
      report.passed = false;
      report.failures.push_back("'" + K.id_name(id) + "': " + e.what());
      continue;
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) {
      report.passed = false;
      report.failures.push_back("coassociativity fails on '" + K.id_name(id) + "'");
      continue;
    }
    auto degenerate = [](const Triple& t) {
      return std::get<0>(t).is_degenerate() || std::get<1>(t).is_degenerate() || std::get<2>(t).is_degenerate();
    };
    std::erase_if(lhs, degenerate);
    std::erase_if(rhs, degenerate);
    if (lhs != rhs) {
      report.passed = false;
      report.failures.push_back("normalized coassociativity fails on '" + K.id_name(id) + "'");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

bool CubeSimplex::is_valid() const {
  if (vertices.empty() || n < 0 || n > 31) return false;
  const std::uint32_t mask = n == 0 ? 0u : ((1u << n) - 1u);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if ((vertices[k] & ~mask) != 0) return false;
    if (k > 0 && (vertices[k - 1] & ~vertices[k]) != 0) return false;
  }
  return true;
}

bool CubeSimplex::is_nondegenerate() const {
  for (std::size_t k = 1; k < vertices.size(); ++k)
    if (vertices[k] == vertices[k - 1]) return false;
  return true;
}

void add_to(CubeChain& chain, const CubeSimplex& s, std::int64_t coeff) {
  if (coeff == 0 || !s.is_nondegenerate()) return;
  auto [it, inserted] = chain.try_emplace(s, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) chain.erase(it);
  }
}

CubeChain cube_boundary(const CubeSimplex& s) {
  CubeChain out;
  if (s.dim() == 0) return out;
  for (int i = 0; i <= s.dim(); ++i) {
    CubeSimplex f{s.n, s.vertices};
    f.vertices.erase(f.vertices.begin() + i);
    add_to(out, f, i % 2 == 0 ? 1 : -1);
  }
  return out;
}

CubeChain cube_boundary(const CubeChain& c) {
  CubeChain out;
  for (const auto& [s, k] : c)
    for (const auto& [f, v] : cube_boundary(s)) add_to(out, f, k * v);
  return out;
}

CubeChain ez_shuffle(const CubeSimplex& a, const CubeSimplex& b) {
  CubeChain out;
  const int p = a.dim();
  const int q = b.dim();
  CubeSimplex cur{a.n + b.n, {}};
  cur.vertices.reserve(static_cast<std::size_t>(p + q) + 1);
  // i, j: positions reached in a and b; inversions: (b-step, later a-step) pairs.
  std::function<void(int, int, int)> walk = [&](int i, int j, int inversions) {
    cur.vertices.push_back(a.vertices[static_cast<std::size_t>(i)] |
                           (b.vertices[static_cast<std::size_t>(j)] << a.n));
    if (i == p && j == q) {
      add_to(out, cur, inversions % 2 == 0 ? 1 : -1);
    } else {
      if (i < p) walk(i + 1, j, inversions + j);
      if (j < q) walk(i, j + 1, inversions);
    }
    cur.vertices.pop_back();
  };
  walk(0, 0, 0);
  return out;
}

CubeChain ez_shuffle(const CubeChain& a, const CubeChain& b) {
  CubeChain out;
  for (const auto& [s, x] : a)
    for (const auto& [t, y] : b)
      for (const auto& [u, z] : ez_shuffle(s, t)) add_to(out, u, x * y * z);
  return out;
}

CubeSimplex interval_edge() { return CubeSimplex{1, {0u, 1u}}; }
CubeSimplex cube_point() { return CubeSimplex{0, {0u}}; }

CubeChain edge_power(int n) {
  CubeChain acc{{cube_point(), 1}};
  const CubeChain e{{interval_edge(), 1}};
  for (int k = 0; k < n; ++k) acc = ez_shuffle(acc, e);
  return acc;
}

std::vector<CubeSimplex> cube_simplices(int n, int m) {
  std::vector<CubeSimplex> out;
  if (m < 0 || m > n) return out;
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  CubeSimplex cur{n, {}};
  std::function<void(std::uint32_t)> extend = [&](std::uint32_t last) {
    if (cur.dim() == m) {
      out.push_back(cur);
      return;
    }
    // Strict supersets of `last`, enumerated in increasing numeric order.
    const std::uint32_t free_bits = full & ~last;
    std::vector<std::uint32_t> next;
    for (std::uint32_t sub = free_bits; sub != 0; sub = (sub - 1) & free_bits) next.push_back(last | sub);
    std::sort(next.begin(), next.end());
    for (std::uint32_t v : next) {
      cur.vertices.push_back(v);
      extend(v);
      cur.vertices.pop_back();
    }
  };
  for (std::uint32_t v = 0; v <= full; ++v) {
    cur.vertices.assign(1, v);
    extend(v);
  }
  return out;
}

IntegerComplex cube_simplicial_chains(int n, int max_degree) {
  IntegerComplex C;
  const int top = std::max(0, max_degree);
  std::vector<std::map<CubeSimplex, std::uint32_t>> index(static_cast<std::size_t>(top) + 1);
  for (int m = 0; m <= top; ++m) {
    const auto basis = cube_simplices(n, m);
    C.basis_sizes.push_back(basis.size());
    for (std::uint32_t k = 0; k < basis.size(); ++k) index[static_cast<std::size_t>(m)].emplace(basis[k], k);
  }
  C.boundary.emplace_back(0, C.basis_sizes[0]);
  for (int m = 1; m <= top; ++m) {
    const auto& src = index[static_cast<std::size_t>(m)];
    const auto& dst = index[static_cast<std::size_t>(m - 1)];
    SparseMatrix d(dst.size(), src.size());
    for (const auto& [s, j] : src) {
      for (const auto& [f, v] : cube_boundary(s)) d.columns[j].emplace_back(dst.at(f), v);
      std::sort(d.columns[j].begin(), d.columns[j].end());
    }
    C.boundary.push_back(std::move(d));
  }
  C.top_complete = top >= n;
  return C;
}

}  // namespace cobar
