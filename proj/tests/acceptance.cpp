// Acceptance gate: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cobar/chains.hpp"
#include "cobar/cobar.hpp"
#include "cobar/necklace.hpp"
#include "cobar/rigid.hpp"
#include "oracles.hpp"

using namespace cobar;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Outcome sign_consistency() {
  const auto start = Clock::now();
  Outcome o;
  std::size_t words = 0;
  for (const auto& name : builtin_names()) {
    const auto K = builtin_space(name);
    const auto a = cobar_square_zero(K, {8, 8});
    const auto b = fsq_square_zero(K, {8, 8});
    words += a.words_checked + b.words_checked;
    if (!a.passed || !b.passed) {
      o.passed = false;
      o.detail += name + " ";
    }
  }
  const double secs = seconds_since(start);
  if (secs >= 60.0) o.passed = false;
  std::ostringstream s;
  s << words << " words, " << secs << " s (limit 60 s)";
  o.detail += s.str();
  return o;
}

Outcome phi_isomorphism() {
  Outcome o;
  std::size_t pairs = 0, words = 0;
  for (const auto& name : builtin_names()) {
    const auto r = verify_phi(builtin_space(name), {6, 6}, 2024, 100);
    pairs += r.pairs_checked;
    words += r.words_checked;
    if (!r.passed() || r.pairs_checked < 100) {
      o.passed = false;
      o.detail += name + (r.failures.empty() ? "" : ": " + r.failures.front()) + "; ";
    }
  }
  o.detail += std::to_string(words) + " words, " + std::to_string(pairs) + " random pairs";
  return o;
}

Outcome sphere_homology() {
  Outcome o;
  const auto H2 = homology(cobar_complex(builtin_space("sphere:2"), {7, std::nullopt}), 0, 6);
  const auto H3 = homology(cobar_complex(builtin_space("sphere:3"), {7, std::nullopt}), 0, 6);
  std::string r2, r3;
  for (int n = 0; n <= 6; ++n) {
    const bool ok2 = H2.at(n).free_rank == 1 && H2.at(n).torsion.empty();
    const bool ok3 = H3.at(n).free_rank == (n % 2 == 0 ? 1u : 0u) && H3.at(n).torsion.empty();
    o.passed = o.passed && ok2 && ok3;
    r2 += std::to_string(H2.at(n).free_rank);
    r3 += std::to_string(H3.at(n).free_rank);
  }
  o.detail = "sphere:2 ranks " + r2 + ", sphere:3 ranks " + r3;
  return o;
}

Outcome pi0_ring() {
  Outcome o;
  const auto rp2 = h0_ring_presentation(builtin_space("rp2")).monoid_relations();
  const auto torus = h0_ring_presentation(builtin_space("torus")).monoid_relations();
  o.passed = rp2 == std::vector<std::string>{"Â_a^2 = 1"} &&
             torus == std::vector<std::string>{"Â_c = Â_a Â_b", "Â_c = Â_b Â_a"};
  for (const char* name : {"wedge-circles:1", "wedge-circles:2", "wedge-circles:3"})
    o.passed = o.passed && h0_ring_presentation(builtin_space(name)).is_free();
  o.detail = "rp2 {" + (rp2.empty() ? std::string() : rp2.front()) + "}, torus " + std::to_string(torus.size()) +
             " relations, wedges free";
  return o;
}

Outcome psi_comparison() {
  const auto start = Clock::now();
  Outcome o;
  struct Case {
    const char* name;
    int degree;
    std::optional<int> length;
  };
  for (const Case& c : {Case{"sphere:2", 2, std::nullopt}, Case{"wedge-circles:1", 0, 3}, Case{"wedge-circles:2", 0, 3}}) {
    const auto r = verify_psi(builtin_space(c.name), c.degree, {c.degree, c.length}, 7);
    const bool ok = r.chain_map && r.homology_agrees;
    o.passed = o.passed && ok;
    o.detail += std::string(c.name) + (ok ? " ok" : " FAILED") + " (product order " + r.product_order + "); ";
  }
  const double secs = seconds_since(start);
  if (secs >= 120.0) o.passed = false;
  std::ostringstream s;
  s << secs << " s (limit 120 s)";
  o.detail += s.str();
  return o;
}

Outcome smith_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DenseMatrix M = oracle::random_matrix(rng, 6, 9);
    if (smith_normal_form(M).factors != oracle::minor_gcd_factors(M)) ++mismatches;
  }
  o.passed = mismatches == 0;
  o.detail = "1000 matrices up to 6x6, entries in [-9,9], " + std::to_string(mismatches) + " mismatches";
  return o;
}

Outcome operator_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240602);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto [steps, n] = oracle::random_word(rng, 6, 5);
    const auto op = SimplicialOperator::from_steps(steps, n);
    const auto map = oracle::from_steps(steps, n);
    if (!(oracle::of(op) == map) || op.faces() != oracle::missed_vertices(map) ||
        op.degeneracies() != oracle::repeats(map))
      ++mismatches;
  }
  o.passed = mismatches == 0;
  o.detail = "1000 operator words (length <= 6, dimension <= 5), " + std::to_string(mismatches) + " mismatches";
  return o;
}

Outcome ez_aw_structure() {
  Outcome o;
  std::size_t pairs = 0;
  int failures = 0;
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      for (int m = 0; m <= p; ++m)
        for (int k = 0; k <= q; ++k)
          for (const auto& a : cube_simplices(p, m))
            for (const auto& b : cube_simplices(q, k)) {
              ++pairs;
              CubeChain rhs = ez_shuffle(cube_boundary(a), CubeChain{{b, 1}});
              for (const auto& [s, v] : ez_shuffle(CubeChain{{a, 1}}, cube_boundary(b)))
                add_to(rhs, s, a.dim() % 2 == 0 ? v : -v);
              if (cube_boundary(ez_shuffle(a, b)) != rhs) ++failures;
            }
  std::size_t simplices = 0;
  for (const auto& name : builtin_names()) {
    const auto r = coassociativity_check(builtin_space(name), 5);
    simplices += r.simplices_checked;
    if (!r.passed) ++failures;
  }
  o.passed = failures == 0;
  o.detail = std::to_string(pairs) + " shuffle pairs on cubes up to 3+3, " + std::to_string(simplices) +
             " simplices for coassociativity";
  return o;
}

std::pair<int, std::string> run_tool(const std::string& args) {
  const std::string cmd = std::string(COBAR_KIT_PATH) + " " + args;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

Outcome determinism() {
  Outcome o;
  const std::string args = "compare builtin:torus --max-degree 3 --max-length 6 --seed 7";
  const auto a = run_tool(args);
  const auto b = run_tool(args);
  o.passed = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second;
  o.detail = std::to_string(a.second.size()) + " bytes, exit " + std::to_string(a.first) + "/" +
             std::to_string(b.first) + (a.second == b.second ? ", identical" : ", different");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"sign consistency: D^2 = 0 and necklace d^2 = 0, degree <= 8, length <= 8", sign_consistency},
      {"phi: bijection, unipotent, chain map, algebra map on all builtins, degree <= 6, length <= 6", phi_isomorphism},
      {"loop-space homology of sphere:2 and sphere:3, degrees 0..6", sphere_homology},
      {"pi0-ring presentations for rp2, torus, wedges", pi0_ring},
      {"psi: chain map and homology agreement", psi_comparison},
      {"Smith normal form against minor-gcd oracle", smith_oracle},
      {"operator normal forms against monotone-map oracle", operator_oracle},
      {"shuffle chain-map identity and AW coassociativity", ez_aw_structure},
      {"deterministic JSON from compare builtin:torus", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.passed ? "PASS" : "FAIL") << "  criterion " << (k + 1) << ": " << criteria[k].first
         << " [" << o.detail << "] (" << seconds_since(start) << " s)";
    std::cout << line.str() << std::endl;
    failed += o.passed ? 0 : 1;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
