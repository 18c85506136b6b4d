#include "cobar/necklace.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cobar {

namespace {

// Appends the reduced bead to `piece`; returns the sign factor, 0 if the term dies.
int push_bead(const SimplexRef& r, Word& piece) {
  if (!r.is_degenerate()) {
    piece.push_back(r.base);
    return 1;
  }
  return r.dim == 1 ? -1 : 0;
}

std::vector<WordCombination> bead_differentials(const ReducedSimplicialSet& K) {
  std::vector<WordCombination> images(K.size());
  for (SimplexId id = 1; id < K.size(); ++id) {
    const int p = K.dim(id);
    const SimplexRef f = K.ref(id);
    for (int s = 1; s < p; ++s) {
      const int local = s % 2 == 1 ? 1 : -1;
      const auto [front, back] = front_back_restrictions(f, s, K);
      Word split;
      const int split_sign = push_bead(front, split) * push_bead(back, split);
      add_term(images[id], split, local * split_sign);
      Word inner;
      const int inner_sign = push_bead(K.face(id, s), inner);
      add_term(images[id], inner, local * inner_sign);
    }
  }
  return images;
}

}  // namespace

int necklace_dim(const std::vector<int>& bead_dims) {
  int total = 0;
  for (int d : bead_dims) {
    if (d < 1) throw std::invalid_argument("necklace beads have dimension >= 1");
    total += d - 1;
  }
  return total;
}

NecklaceModel::NecklaceModel(const ReducedSimplicialSet& K) : derivation_(K, bead_differentials(K)) {}

std::vector<Word> NecklaceModel::basis(int degree, const TruncationPolicy& policy) const {
  return enumerate_words(space(), degree, policy.max_length);
}

WordCombination NecklaceModel::reduce(const WordCombination& x, int max_length) const {
  WordCombination out;
  const auto& K = space();
  for (const auto& [w, c] : x) {
    const int len = static_cast<int>(w.size());
    if (len <= max_length) {
      add_term(out, w, c);
      continue;
    }
    if (len > max_length + 1) throw std::logic_error("necklace word more than one bead over the length bound");
    std::vector<std::size_t> edges;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (K.dim(w[k]) == 1) edges.push_back(k);
    const std::size_t subsets = std::size_t{1} << edges.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      Word v;
      std::size_t next = 0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (next < edges.size() && edges[next] == k) {
          const bool drop = (mask >> next) & 1u;
          ++next;
          if (drop) continue;
        }
        v.push_back(w[k]);
      }
      add_term(out, v, -c);
    }
  }
  return out;
}

IntegerComplex NecklaceModel::complex(const TruncationPolicy& policy) const {
  std::vector<std::vector<Word>> bases;
  for (int n = 0; n <= policy.max_degree; ++n) bases.push_back(basis(n, policy));
  IntegerComplex C = assemble_complex(bases, [&](const Word& w) {
    WordCombination d = differential(w);
    return policy.max_length ? reduce(d, *policy.max_length) : d;
  });
  C.max_length = policy.max_length;
  return C;
}

WordCombination fsq_differential(const Word& w, const ReducedSimplicialSet& K) {
  return NecklaceModel(K).differential(w);
}

std::vector<Word> fsq_basis(const ReducedSimplicialSet& K, int degree, const TruncationPolicy& policy) {
  return enumerate_words(K, degree, policy.max_length);
}

WordCombination phi(const Word& w, const ReducedSimplicialSet& K) {
  WordCombination acc{{Word{}, 1}};
  for (SimplexId bead : w) {
    WordCombination next;
    for (const auto& [m, c] : acc) {
      Word grown = m;
      grown.push_back(bead);
      add_term(next, grown, c);
      if (K.dim(bead) == 1) add_term(next, m, -c);
    }
    acc = std::move(next);
  }
  return acc;
}

WordCombination phi(const WordCombination& x, const ReducedSimplicialSet& K) {
  WordCombination out;
  for (const auto& [w, c] : x) add_scaled(out, phi(w, K), c);
  return out;
}

SquareZeroReport fsq_square_zero(const ReducedSimplicialSet& K, const TruncationPolicy& policy) {
  const NecklaceModel model(K);
  SquareZeroReport report;
  for (int n = 0; n <= policy.max_degree; ++n) {
    for (const Word& w : model.basis(n, policy)) {
      ++report.words_checked;
      const WordCombination dd = model.differential(model.differential(w));
      if (!dd.empty() && report.failures.size() < 10) {
        report.passed = false;
        report.failures.push_back("(d^sq)^2 " + word_to_string(w, K) + " = " + combination_to_string(dd, K));
      }
    }
  }
  return report;
}

PhiReport verify_phi(const ReducedSimplicialSet& K, const TruncationPolicy& policy, std::uint64_t seed,
                     std::size_t pairs) {
  PhiReport report;
  const NecklaceModel model(K);
  const CobarConstruction cobar(K);
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    if (report.failures.size() < 20) report.failures.push_back(std::move(msg));
  };

  std::vector<Word> pool;
  for (int n = 0; n <= policy.max_degree; ++n) {
    const std::vector<Word> source = model.basis(n, policy);
    const std::vector<Word> target = cobar.basis(n, policy);
    if (source.size() != target.size()) {
      fail(report.bijection, "degree " + std::to_string(n) + ": basis sizes differ");
      continue;
    }
    std::unordered_map<Word, std::size_t, WordHash> target_index;
    for (std::size_t k = 0; k < target.size(); ++k) target_index.emplace(target[k], k);
    for (std::size_t i = 0; i < source.size(); ++i) {
      const Word& w = source[i];
      ++report.words_checked;
      const WordCombination image = phi(w, K);
      auto own = target_index.find(w);
      if (own == target_index.end() || own->second != i) {
        fail(report.bijection, "degree " + std::to_string(n) + ": " + word_to_string(w, K) + " has no matching monomial");
      } else {
        for (const auto& [m, c] : image) {
          auto it = target_index.find(m);
          const bool diagonal = it != target_index.end() && it->second == i;
          if (diagonal ? c != 1 : (it == target_index.end() || it->second > i)) {
            fail(report.unipotent, "phi" + word_to_string(w, K) + " is not unipotent triangular");
            break;
          }
        }
      }
      const WordCombination lhs = phi(model.differential(w), K);
      const WordCombination rhs = cobar.differential(image);
      if (!same_combination(lhs, rhs)) {
        fail(report.chain_map, "phi(d " + word_to_string(w, K) + ") = " + combination_to_string(lhs, K) +
                                   " but D(phi) = " + combination_to_string(rhs, K));
      }
      pool.push_back(w);
    }
  }

  if (!pool.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t k = 0; k < pairs; ++k) {
      const Word& a = pool[pick(rng)];
      const Word& b = pool[pick(rng)];
      ++report.pairs_checked;
      if (!same_combination(phi(fsq_product(a, b), K), cobar_product(phi(a, K), phi(b, K)))) {
        fail(report.multiplicative, "phi not multiplicative on " + word_to_string(a, K) + ", " + word_to_string(b, K));
      }
    }
  }
  return report;
}

}  // namespace cobar
