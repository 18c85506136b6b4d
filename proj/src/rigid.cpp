#include "cobar/rigid.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace cobar {

namespace {

// Offsets of each bead's first coordinate; back() is the cube dimension.
std::vector<int> coordinate_offsets(const Word& w, const ReducedSimplicialSet& K) {
  std::vector<int> off{0};
  for (SimplexId f : w) off.push_back(off.back() + K.dim(f) - 1);
  return off;
}

// Source index v in 0..q -> target index of the codegeneracy matching the
// degeneracy word (which identifies v and v+1 for v in the word).
std::vector<int> collapse_map(const SimplexRef& r) {
  std::vector<int> eps(r.dim + 1, 0);
  for (int v = 0; v < r.dim; ++v) {
    const bool merged = std::find(r.degeneracies.begin(), r.degeneracies.end(), v) != r.degeneracies.end();
    eps[v + 1] = eps[v] + (merged ? 0 : 1);
  }
  return eps;
}

void surjections(int n, int m, std::vector<std::uint8_t>& cur, std::vector<int>& used, int distinct,
                 std::vector<std::vector<std::uint8_t>>& out) {
  const int pos = static_cast<int>(cur.size());
  if (pos == n) {
    if (distinct == m) out.push_back(cur);
    return;
  }
  if (n - pos < m - distinct) return;
  for (int b = 0; b < m; ++b) {
    cur.push_back(static_cast<std::uint8_t>(b));
    const bool fresh = used[b]++ == 0;
    surjections(n, m, cur, used, distinct + (fresh ? 1 : 0), out);
    --used[b];
    cur.pop_back();
  }
}

bool same_chain(const RigidChain& a, const RigidChain& b) { return a == b; }

}  // namespace

void add_to(RigidChain& chain, const RigidGenerator& g, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = chain.try_emplace(g, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) chain.erase(it);
  }
}

std::optional<RigidGenerator> RigidModel::normalize(const std::vector<RawBead>& beads, int degree) const {
  RigidGenerator g;
  g.degree = degree;
  for (const RawBead& bead : beads) {
    const SimplexRef& r = bead.simplex;
    if (!r.is_degenerate()) {
      g.word.push_back(r.base);
      for (int b : bead.inner_blocks) g.blocks.push_back(static_cast<std::uint8_t>(b));
      continue;
    }
    const int target = r.dim - static_cast<int>(r.degeneracies.size());
    if (target == 0) continue;
    const std::vector<int> eps = collapse_map(r);
    std::vector<int> merged(target + 1, degree);
    for (int v = 1; v < r.dim; ++v) merged[eps[v]] = std::min(merged[eps[v]], bead.inner_blocks[v - 1]);
    g.word.push_back(r.base);
    for (int c = 1; c < target; ++c) g.blocks.push_back(static_cast<std::uint8_t>(merged[c]));
  }
  if (degree == 0) {
    if (!g.blocks.empty()) return std::nullopt;
    return g;
  }
  std::vector<bool> seen(degree, false);
  for (auto b : g.blocks) seen[b] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) return std::nullopt;
  return g;
}

RigidChain RigidModel::boundary(const RigidGenerator& g) const {
  const ReducedSimplicialSet& K = *K_;
  RigidChain out;
  const int m = g.degree;
  if (m == 0) return out;

  for (int t = 1; t < m; ++t) {
    RigidGenerator h{g.word, g.blocks, m - 1};
    for (auto& b : h.blocks)
      if (b >= t) --b;
    add_to(out, h, t % 2 == 0 ? 1 : -1);
  }

  const std::vector<int> off = coordinate_offsets(g.word, K);
  // d_0: the first step's coordinates are on from the start, so the path
  // breaks there. d_m: the last step's coordinates never switch on, so the
  // path skips those vertices.
  for (int t : {0, m}) {
    std::vector<RawBead> raw;
    for (std::size_t i = 0; i < g.word.size(); ++i) {
      const SimplexRef f = K.ref(g.word[i]);
      const int p = f.dim;
      auto block_of = [&](int s) { return static_cast<int>(g.blocks[off[i] + s - 1]); };
      if (t == 0) {
        int start = 0;
        for (int s = 1; s <= p; ++s) {
          if (s < p && block_of(s) != 0) continue;
          std::vector<int> verts;
          RawBead bead;
          for (int v = start; v <= s; ++v) {
            verts.push_back(v);
            if (v != start && v != s) bead.inner_blocks.push_back(block_of(v) - 1);
          }
          bead.simplex = restrict_to_vertices(f, verts, K);
          raw.push_back(std::move(bead));
          start = s;
        }
      } else {
        std::vector<int> verts{0};
        RawBead bead;
        for (int s = 1; s < p; ++s) {
          if (block_of(s) == m - 1) continue;
          verts.push_back(s);
          bead.inner_blocks.push_back(block_of(s));
        }
        verts.push_back(p);
        bead.simplex = restrict_to_vertices(f, verts, K);
        raw.push_back(std::move(bead));
      }
    }
    if (auto h = normalize(raw, m - 1)) add_to(out, *h, t % 2 == 0 ? 1 : -1);
  }
  return out;
}

RigidChain RigidModel::boundary(const RigidChain& c) const {
  RigidChain out;
  for (const auto& [g, k] : c)
    for (const auto& [h, v] : boundary(g)) add_to(out, h, k * v);
  return out;
}

CubeSimplex RigidModel::cube_simplex(const RigidGenerator& g) const {
  CubeSimplex s;
  s.n = static_cast<int>(g.blocks.size());
  s.vertices.assign(g.degree + 1, 0);
  for (std::size_t c = 0; c < g.blocks.size(); ++c)
    for (int k = g.blocks[c] + 1; k <= g.degree; ++k) s.vertices[k] |= std::uint32_t{1} << c;
  return s;
}

RigidGenerator RigidModel::from_cube_simplex(const Word& w, const CubeSimplex& s) const {
  const std::uint32_t full = s.n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << s.n) - 1;
  if (s.vertices.empty() || s.vertices.front() != 0 || s.vertices.back() != full)
    throw std::logic_error("cube simplex does not span the cube");
  RigidGenerator g{w, std::vector<std::uint8_t>(s.n, 0), s.dim()};
  for (int k = 1; k <= s.dim(); ++k) {
    const std::uint32_t fresh = s.vertices[k] & ~s.vertices[k - 1];
    for (int c = 0; c < s.n; ++c)
      if ((fresh >> c) & 1u) g.blocks[c] = static_cast<std::uint8_t>(k - 1);
  }
  return g;
}

RigidChain RigidModel::concat_product(const RigidChain& a, const RigidChain& b) const {
  RigidChain out;
  for (const auto& [x, u] : a)
    for (const auto& [y, v] : b) {
      const Word w = concat(x.word, y.word);
      for (const auto& [s, k] : ez_shuffle(cube_simplex(x), cube_simplex(y)))
        add_to(out, from_cube_simplex(w, s), u * v * k);
    }
  return out;
}

std::vector<RigidGenerator> RigidModel::generators(const Word& w, int degree) const {
  const int n = cube_dim(w);
  std::vector<RigidGenerator> out;
  if (degree == 0) {
    if (n == 0) out.push_back(RigidGenerator{w, {}, 0});
    return out;
  }
  if (n < degree) return out;
  std::vector<std::vector<std::uint8_t>> parts;
  std::vector<std::uint8_t> cur;
  std::vector<int> used(degree, 0);
  surjections(n, degree, cur, used, 0, parts);
  for (auto& p : parts) out.push_back(RigidGenerator{w, std::move(p), degree});
  return out;
}

std::string generator_to_string(const RigidGenerator& g, const ReducedSimplicialSet& K) {
  std::string s = "(" + word_to_string(g.word, K) + ";";
  for (auto b : g.blocks) s += " " + std::to_string(b);
  return s + ")";
}

std::string chain_to_string(const RigidChain& c, const ReducedSimplicialSet& K) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [g, k] : c) {
    out += out.empty() ? (k < 0 ? "-" : "") : (k < 0 ? " - " : " + ");
    const std::int64_t a = k < 0 ? -k : k;
    if (a != 1) out += std::to_string(a) + " ";
    out += generator_to_string(g, K);
  }
  return out;
}

std::vector<Word> enumerate_necklace_maps(const ReducedSimplicialSet& K, int max_cube_dim,
                                          const TruncationPolicy& policy) {
  std::vector<Word> out;
  for (int d = 0; d <= max_cube_dim; ++d) {
    auto words = enumerate_words(K, d, policy.max_length);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

int rigid_length_bound(const ReducedSimplicialSet& K, int max_degree, const TruncationPolicy& policy) {
  if (policy.max_length) return *policy.max_length;
  if (K.has_edges()) throw std::invalid_argument("a length bound is required for spaces with edges");
  int lowest = 0;
  for (SimplexId id = 1; id < K.size(); ++id)
    if (lowest == 0 || K.dim(id) < lowest) lowest = K.dim(id);
  if (lowest == 0) return 0;
  return std::max(1, max_degree / (lowest - 1));
}

RigidComplex rigid_chain_complex(const ReducedSimplicialSet& K, int max_degree, const TruncationPolicy& policy) {
  const RigidModel model(K);
  const int L = rigid_length_bound(K, max_degree, policy);
  std::vector<Word> words;
  for (int len = 0; len <= L; ++len) {
    // Words of exactly this length, any cube dimension.
    std::vector<Word> layer{Word{}};
    for (int k = 0; k < len; ++k) {
      std::vector<Word> next;
      for (const Word& w : layer)
        for (SimplexId id = 1; id < K.size(); ++id) {
          Word v = w;
          v.push_back(id);
          next.push_back(std::move(v));
        }
      layer = std::move(next);
    }
    words.insert(words.end(), layer.begin(), layer.end());
  }

  RigidComplex R;
  R.basis.resize(max_degree + 1);
  std::vector<std::map<RigidGenerator, std::uint32_t>> index(max_degree + 1);
  std::vector<std::vector<RigidChain>> columns(max_degree + 1);
  for (int m = 0; m <= max_degree; ++m) {
    for (const Word& w : words) {
      if (model.cube_dim(w) < m) continue;
      for (RigidGenerator& g : model.generators(w, m)) {
        RigidChain d = model.boundary(g);
        const bool inside = m == 0 || std::all_of(d.begin(), d.end(), [&](const auto& kv) {
                              return index[m - 1].count(kv.first) > 0;
                            });
        if (!inside) {
          ++R.frontier;
          continue;
        }
        index[m].emplace(g, static_cast<std::uint32_t>(R.basis[m].size()));
        R.basis[m].push_back(std::move(g));
        columns[m].push_back(std::move(d));
      }
    }
  }

  IntegerComplex& C = R.complex;
  C.max_length = L;
  C.top_complete = false;
  for (int m = 0; m <= max_degree; ++m) {
    C.basis_sizes.push_back(R.basis[m].size());
    if (m == 0) {
      C.boundary.emplace_back();
      continue;
    }
    SparseMatrix M(R.basis[m - 1].size(), R.basis[m].size());
    for (std::size_t j = 0; j < columns[m].size(); ++j) {
      for (const auto& [h, k] : columns[m][j]) M.columns[j].emplace_back(index[m - 1].at(h), k);
      std::sort(M.columns[j].begin(), M.columns[j].end());
    }
    C.boundary.push_back(std::move(M));
  }
  if (R.frontier > 0)
    R.warnings.push_back("rigid truncation at length " + std::to_string(L) + " dropped " +
                         std::to_string(R.frontier) + " generators whose boundary leaves the bound");
  return R;
}

TruncatedComplex fsq_closed_complex(const ReducedSimplicialSet& K, int max_degree, int max_length) {
  const NecklaceModel model(K);
  TruncatedComplex T;
  std::vector<std::vector<Word>> bases;
  std::unordered_set<Word, WordHash> previous;
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<Word> kept;
    std::unordered_set<Word, WordHash> current;
    for (const Word& w : enumerate_words(K, n, max_length)) {
      const WordCombination d = model.differential(w);
      const bool inside = n == 0 || std::all_of(d.begin(), d.end(), [&](const auto& kv) {
                            return previous.count(kv.first) > 0;
                          });
      if (!inside) {
        ++T.frontier;
        continue;
      }
      kept.push_back(w);
      current.insert(w);
    }
    bases.push_back(std::move(kept));
    previous = std::move(current);
  }
  T.complex = assemble_complex(bases, [&](const Word& w) { return model.differential(w); });
  T.complex.max_length = max_length;
  T.complex.top_complete = false;
  if (T.frontier > 0)
    T.warnings.push_back("necklace truncation at length " + std::to_string(max_length) + " dropped " +
                         std::to_string(T.frontier) + " words whose boundary leaves the bound");
  return T;
}

RigidChain psi(const Word& w, const ReducedSimplicialSet& K) {
  const RigidModel model(K);
  const int n = model.cube_dim(w);
  const std::int64_t sign = (static_cast<int>(w.size()) + n) % 2 == 0 ? 1 : -1;
  RigidChain out;
  for (const auto& [s, k] : edge_power(n)) add_to(out, model.from_cube_simplex(w, s), sign * k);
  return out;
}

RigidChain psi(const WordCombination& x, const ReducedSimplicialSet& K) {
  RigidChain out;
  for (const auto& [w, c] : x)
    for (const auto& [g, k] : psi(w, K)) add_to(out, g, c * k);
  return out;
}

PsiReport verify_psi(const ReducedSimplicialSet& K, int max_degree, const TruncationPolicy& policy,
                     std::uint64_t seed, std::size_t pairs) {
  PsiReport report;
  const RigidModel rigid(K);
  const NecklaceModel necklace(K);
  const int top = max_degree + 1;
  const int L = rigid_length_bound(K, top, policy);
  report.length_bound = L;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    if (report.failures.size() < 20) report.failures.push_back(std::move(msg));
  };

  std::vector<Word> pool;
  std::vector<std::size_t> up_to(top + 1, 0);  // pool size once degree n is in
  for (int n = 0; n <= top; ++n) {
    for (const Word& w : enumerate_words(K, n, L)) {
      ++report.words_checked;
      const RigidChain lhs = rigid.boundary(psi(w, K));
      const RigidChain rhs = psi(necklace.differential(w), K);
      if (!same_chain(lhs, rhs))
        fail(report.chain_map, "d psi" + word_to_string(w, K) + " = " + chain_to_string(lhs, K) +
                                   " but psi d = " + chain_to_string(rhs, K));
      pool.push_back(w);
    }
    up_to[n] = pool.size();
  }

  bool all_concat = true;
  bool all_written = true;
  if (!pool.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t k = 0; k < pairs; ++k) {
      // Pairs stay within the degree bound: b is drawn from degrees <= top - deg a.
      const Word& a = pool[pick(rng)];
      const std::size_t room = up_to[top - rigid.cube_dim(a)];
      const Word& b = pool[std::uniform_int_distribution<std::size_t>(0, room - 1)(rng)];
      ++report.pairs_checked;
      const RigidChain target = psi(concat(a, b), K);
      const RigidChain pa = psi(a, K);
      const RigidChain pb = psi(b, K);
      if (!same_chain(target, rigid.concat_product(pa, pb))) all_concat = false;
      if (!same_chain(target, rigid.composition_product(pa, pb))) all_written = false;
      if (!all_concat && !all_written) {
        fail(report.product_consistent,
             "psi not multiplicative on " + word_to_string(a, K) + ", " + word_to_string(b, K));
        break;
      }
    }
  }
  report.product_order = all_concat && all_written ? "both"
                         : all_concat              ? "concatenation"
                         : all_written             ? "reversed"
                                                   : "none";

  TruncationPolicy bounded{top, L};
  const RigidComplex R = rigid_chain_complex(K, top, bounded);
  const TruncatedComplex F = fsq_closed_complex(K, top, L);
  report.rigid_frontier = R.frontier;
  report.fsq_frontier = F.frontier;
  report.warnings = R.warnings;
  report.warnings.insert(report.warnings.end(), F.warnings.begin(), F.warnings.end());
  report.rigid_homology = homology(R.complex, 0, max_degree);
  report.fsq_homology = homology(F.complex, 0, max_degree);
  for (int n = 0; n <= max_degree; ++n) {
    if (!(report.rigid_homology.at(n) == report.fsq_homology.at(n)))
      fail(report.homology_agrees, "homology differs in degree " + std::to_string(n));
  }
  return report;
}

}  // namespace cobar
