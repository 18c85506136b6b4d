#include "cobar/cobar.hpp"

#include <algorithm>
#include <stdexcept>

namespace cobar {

namespace {

std::vector<WordCombination> generator_differentials(const ReducedSimplicialSet& K) {
  std::vector<WordCombination> images(K.size());
  for (SimplexId id = 1; id < K.size(); ++id) {
    const int n = K.dim(id);
    WordCombination& img = images[id];
    if (n >= 2) {
      for (int i = 0; i <= n; ++i) {
        const SimplexRef& f = K.face(id, i);
        if (!f.is_degenerate()) add_term(img, Word{f.base}, i % 2 == 0 ? -1 : 1);
      }
    }
    for (int j = 1; j < n; ++j) {
      const auto [front, back] = front_back_restrictions(K.ref(id), j, K);
      if (front.is_degenerate() || back.is_degenerate()) continue;
      add_term(img, Word{front.base, back.base}, (j - 1) % 2 == 0 ? 1 : -1);
    }
  }
  return images;
}

WordCombination truncate(WordCombination c, std::optional<int> max_length) {
  if (max_length) std::erase_if(c, [&](const auto& kv) { return static_cast<int>(kv.first.size()) > *max_length; });
  return c;
}

std::string power_product(const Word& w, const ReducedSimplicialSet& K, const std::string& var) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size();) {
    std::size_t e = k;
    while (e < w.size() && w[e] == w[k]) ++e;
    if (!out.empty()) out += " ";
    out += var + "_" + K.id_name(w[k]);
    if (e - k > 1) out += "^" + std::to_string(e - k);
    k = e;
  }
  return out;
}

}  // namespace

CobarConstruction::CobarConstruction(const ReducedSimplicialSet& K) : derivation_(K, generator_differentials(K)) {}

std::vector<Word> CobarConstruction::basis(int degree, const TruncationPolicy& policy) const {
  return enumerate_words(space(), degree, policy.max_length);
}

IntegerComplex CobarConstruction::complex(const TruncationPolicy& policy) const {
  std::vector<std::vector<Word>> bases;
  for (int n = 0; n <= policy.max_degree; ++n) bases.push_back(basis(n, policy));
  IntegerComplex C = assemble_complex(bases, [&](const Word& w) { return truncate(differential(w), policy.max_length); });
  C.max_length = policy.max_length;
  return C;
}

WordCombination cobar_product(const WordCombination& a, const WordCombination& b) {
  WordCombination out;
  for (const auto& [x, u] : a)
    for (const auto& [y, v] : b) add_term(out, concat(x, y), u * v);
  return out;
}

WordCombination cobar_differential(const Word& m, const ReducedSimplicialSet& K) {
  return CobarConstruction(K).differential(m);
}

std::vector<Word> cobar_basis(const ReducedSimplicialSet& K, int degree, const TruncationPolicy& policy) {
  return enumerate_words(K, degree, policy.max_length);
}

IntegerComplex cobar_complex(const ReducedSimplicialSet& K, const TruncationPolicy& policy) {
  return CobarConstruction(K).complex(policy);
}

SquareZeroReport cobar_square_zero(const ReducedSimplicialSet& K, const TruncationPolicy& policy) {
  const CobarConstruction cobar(K);
  SquareZeroReport report;
  for (int n = 0; n <= policy.max_degree; ++n) {
    for (const Word& w : cobar.basis(n, policy)) {
      ++report.words_checked;
      const WordCombination dd = cobar.differential(cobar.differential(w));
      if (!dd.empty() && report.failures.size() < 10) {
        report.passed = false;
        report.failures.push_back("D^2 " + word_to_string(w, K) + " = " + combination_to_string(dd, K));
      }
    }
  }
  return report;
}

bool RingPresentation::is_free() const {
  return std::all_of(relations.begin(), relations.end(), [](const RingRelation& r) { return r.trivial; });
}

std::vector<std::string> RingPresentation::monoid_relations() const {
  std::vector<std::string> out;
  for (const auto& r : relations)
    if (!r.trivial) out.push_back(r.monoid_text);
  return out;
}

RingPresentation h0_ring_presentation(const ReducedSimplicialSet& K) {
  RingPresentation P;
  for (SimplexId e : K.simplices_of_dim(1)) P.generators.push_back("A_" + K.id_name(e));
  const CobarConstruction cobar(K);
  for (SimplexId t : K.simplices_of_dim(2)) {
    RingRelation rel;
    rel.simplex = K.id_name(t);
    rel.raw = cobar.on_generator(t);
    // d1 t is the long edge, d2 t then d0 t the path through the middle vertex.
    auto edge_word = [&](int i) {
      const SimplexRef& f = K.face(t, i);
      return f.is_degenerate() ? Word{} : Word{f.base};
    };
    rel.monoid_lhs = edge_word(1);
    rel.monoid_rhs = concat(edge_word(2), edge_word(0));
    rel.trivial = rel.monoid_lhs == rel.monoid_rhs;

    std::string raw;
    for (const auto& [w, c] : sorted_terms(rel.raw)) {
      const std::int64_t a = c < 0 ? -c : c;
      raw += raw.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      if (a != 1) raw += std::to_string(a) + " ";
      raw += power_product(w, K, "A");
    }
    rel.raw_text = (raw.empty() ? "0" : raw) + " = 0";
    Word lhs = rel.monoid_lhs;
    Word rhs = rel.monoid_rhs;
    if (lhs.empty()) std::swap(lhs, rhs);
    rel.monoid_text = power_product(lhs, K, "Â") + " = " + power_product(rhs, K, "Â");
    P.relations.push_back(std::move(rel));
  }
  return P;
}

}  // namespace cobar
