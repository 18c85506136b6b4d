#include <gtest/gtest.h>

#include <random>

#include "cobar/chains.hpp"

using namespace cobar;

namespace {

SimplexRef vertex() { return SimplexRef{{}, kBasepoint, 0}; }

ReducedSimplicialSet triangle() {
  std::vector<SimplexSpec> specs;
  for (const char* e : {"a", "b", "c"}) specs.push_back({e, 1, {{{}, "*"}, {{}, "*"}}});
  specs.push_back({"t", 2, {{{}, "b"}, {{}, "c"}, {{}, "a"}}});
  return ReducedSimplicialSet("tri", specs);
}

CubeChain single(const CubeSimplex& s) { return CubeChain{{s, 1}}; }

CubeChain scaled(CubeChain c, std::int64_t k) {
  for (auto& [s, v] : c) v *= k;
  return c;
}

CubeChain sum(const CubeChain& a, const CubeChain& b) {
  CubeChain out = a;
  for (const auto& [s, v] : b) add_to(out, s, v);
  return out;
}

}  // namespace

TEST(NormalizedBoundary, Examples) {
  const auto s2 = builtin_space("sphere:2");
  EXPECT_TRUE(normalized_boundary(s2.find("s"), s2).is_zero());

  const auto rp2 = builtin_space("rp2");
  const auto d = normalized_boundary(rp2.find("f"), rp2);
  ASSERT_EQ(d.terms.size(), 1u);
  EXPECT_EQ(d.terms.at(rp2.find("a")), 2);

  const auto torus = builtin_space("torus");
  for (SimplexId e : torus.simplices_of_dim(1)) EXPECT_TRUE(normalized_boundary(e, torus).is_zero());
}

TEST(NormalizedBoundary, SquaresToZero) {
  for (const auto& name : builtin_names()) {
    const auto K = builtin_space(name);
    for (SimplexId id = 1; id < K.size(); ++id) {
      if (K.dim(id) < 2) continue;
      NormalizedChain dd;
      dd.degree = K.dim(id) - 2;
      for (const auto& [f, c] : normalized_boundary(id, K).terms)
        if (K.dim(f) >= 1)
          for (const auto& [g, k] : normalized_boundary(f, K).terms) dd.add(K.ref(g), c * k);
      EXPECT_TRUE(dd.is_zero()) << name << " " << K.id_name(id);
    }
  }
}

TEST(Aw, VertexIsGrouplike) {
  const auto K = triangle();
  const auto terms = aw_coproduct(vertex(), K);
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0].front, vertex());
  EXPECT_EQ(terms[0].back, vertex());
}

TEST(Aw, TriangleHasMiddleTerm) {
  const auto K = triangle();
  const auto terms = aw_coproduct(K.ref(K.find("t")), K);
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_EQ(terms[0].front, vertex());
  EXPECT_EQ(terms[0].back, K.ref(K.find("t")));
  EXPECT_EQ(terms[1].front, K.ref(K.find("a")));
  EXPECT_EQ(terms[1].back, K.ref(K.find("b")));
  EXPECT_EQ(terms[2].front, K.ref(K.find("t")));
  EXPECT_EQ(terms[2].back, vertex());
}

TEST(Aw, SphereMiddleTermDegenerate) {
  const auto K = builtin_space("sphere:2");
  const auto terms = aw_coproduct(K.ref(K.find("s")), K);
  ASSERT_EQ(terms.size(), 3u);
  EXPECT_TRUE(terms[1].front.is_degenerate());
  EXPECT_TRUE(terms[1].back.is_degenerate());
}

TEST(Aw, CoassociativeOnBuiltins) {
  for (const auto& name : builtin_names()) {
    const auto r = coassociativity_check(builtin_space(name), 5);
    EXPECT_TRUE(r.passed) << name;
  }
  EXPECT_TRUE(coassociativity_check(triangle(), 5).passed);
}

TEST(Shuffle, EdgeTimesEdge) {
  const CubeChain c = ez_shuffle(interval_edge(), interval_edge());
  ASSERT_EQ(c.size(), 2u);
  std::int64_t total = 0;
  for (const auto& [s, k] : c) {
    EXPECT_EQ(s.dim(), 2);
    EXPECT_EQ(s.vertices.front(), 0u);
    EXPECT_EQ(s.vertices.back(), 3u);
    total += k;
  }
  EXPECT_EQ(total, 0);
}

TEST(Shuffle, PointIsUnit) {
  const CubeSimplex e = interval_edge();
  const CubeChain c = ez_shuffle(cube_point(), e);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.begin()->first.vertices, e.vertices);
  EXPECT_EQ(c.begin()->second, 1);
}

TEST(Shuffle, EdgeCubed) {
  const CubeChain c = edge_power(3);
  ASSERT_EQ(c.size(), 6u);
  for (const auto& [s, k] : c) {
    EXPECT_EQ(s.dim(), 3);
    EXPECT_TRUE(k == 1 || k == -1);
  }
  // Sign of a maximal chain is the sign of the order in which it switches coordinates.
  for (const auto& [s, k] : c) {
    std::vector<int> order;
    for (int t = 1; t <= 3; ++t) order.push_back(__builtin_ctz(s.vertices[t] & ~s.vertices[t - 1]));
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) inversions += order[i] > order[j];
    EXPECT_EQ(k, inversions % 2 == 0 ? 1 : -1);
  }
}

TEST(Shuffle, IsChainMap) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
    const auto as = cube_simplices(p, static_cast<int>(rng() % (p + 1)));
    const auto bs = cube_simplices(q, static_cast<int>(rng() % (q + 1)));
    const CubeSimplex& a = as[rng() % as.size()];
    const CubeSimplex& b = bs[rng() % bs.size()];
    const CubeChain lhs = cube_boundary(ez_shuffle(a, b));
    const CubeChain rhs = sum(ez_shuffle(cube_boundary(a), single(b)),
                              scaled(ez_shuffle(single(a), cube_boundary(b)), a.dim() % 2 == 0 ? 1 : -1));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Shuffle, Associative) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto pick = [&](int n) {
      const auto all = cube_simplices(n, static_cast<int>(rng() % (n + 1)));
      return all[rng() % all.size()];
    };
    const CubeSimplex a = pick(1), b = pick(2), c = pick(1);
    EXPECT_EQ(ez_shuffle(ez_shuffle(single(a), single(b)), single(c)),
              ez_shuffle(single(a), ez_shuffle(single(b), single(c))));
  }
}

TEST(CubeChains, Contractible) {
  const auto C0 = cube_simplicial_chains(0, 0);
  EXPECT_EQ(C0.basis_sizes, std::vector<std::size_t>{1});

  const auto C1 = cube_simplicial_chains(1, 1);
  EXPECT_EQ(C1.basis_sizes, (std::vector<std::size_t>{2, 1}));
  EXPECT_TRUE(C1.top_complete);
  const auto H1 = homology(C1, 0, 1);
  EXPECT_EQ(H1.at(0).free_rank, 1u);
  EXPECT_EQ(H1.at(1).free_rank, 0u);

  for (int n = 2; n <= 3; ++n) {
    const auto C = cube_simplicial_chains(n, n);
    EXPECT_TRUE(verify_complex(C).passed);
    const auto H = homology(C, 0, n);
    EXPECT_EQ(H.at(0).free_rank, 1u);
    for (int k = 1; k <= n; ++k) {
      EXPECT_EQ(H.at(k).free_rank, 0u);
      EXPECT_TRUE(H.at(k).torsion.empty());
    }
  }
}
