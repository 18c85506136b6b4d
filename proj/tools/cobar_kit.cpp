#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cobar/chains.hpp"
#include "cobar/cobar.hpp"
#include "cobar/necklace.hpp"
#include "cobar/rigid.hpp"
#include "cobar/simplicial.hpp"

#ifndef COBAR_KIT_VERSION
#define COBAR_KIT_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace cobar;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct RunConfig {
  std::string command;
  std::string input;
  int max_degree = 4;
  std::optional<int> max_length;
  std::string model = "cobar";
  std::string format = "json";
  std::uint64_t seed = 0;
  bool strict = false;
};

struct Report {
  json results = json::array();
  json warnings = json::array();
  bool failed = false;
  bool frontier = false;  // a truncation frontier was hit
  std::vector<std::string> table;

  void warn(const std::string& w, bool is_frontier = false) {
    warnings.push_back(w);
    frontier = frontier || is_frontier;
  }
};

ReducedSimplicialSet load_space(const std::string& input) {
  const std::string prefix = "builtin:";
  if (input.rfind(prefix, 0) == 0) return builtin_space(input.substr(prefix.size()));
  std::ifstream in(input);
  if (!in) throw InputError("cannot read input file '" + input + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_simplicial_set(text.str());
}

json torsion_json(const std::vector<mpz_class>& t) {
  json a = json::array();
  for (const auto& x : t) a.push_back(x.get_str());
  return a;
}

json homology_json(const HomologyResult& H, const IntegerComplex& C) {
  json degrees = json::array();
  for (const auto& d : H.degrees)
    degrees.push_back({{"degree", d.degree}, {"free_rank", d.free_rank}, {"torsion", torsion_json(d.torsion)}});
  json out;
  out["truncated_at_length"] = H.truncated_at_length ? json(*H.truncated_at_length) : json(nullptr);
  out["complex_top_degree"] = C.top_degree();
  out["basis_sizes"] = C.basis_sizes;
  out["degrees"] = degrees;
  return out;
}

std::string ranks_line(const HomologyResult& H) {
  std::string s;
  for (const auto& d : H.degrees) {
    if (!s.empty()) s += " ";
    s += std::to_string(d.free_rank);
    for (const auto& t : d.torsion) s += "+Z/" + t.get_str();
  }
  return s;
}

std::string pass_text(bool ok) { return ok ? "PASS" : "FAIL"; }

json failures_json(const std::vector<std::string>& f) { return json(f); }

TruncationPolicy policy_for(const RunConfig& cfg, const ReducedSimplicialSet& K, int degree, Report& rep) {
  if (!cfg.max_length) {
    if (K.has_edges()) throw InputError("--max-length is required: '" + K.name() + "' has nondegenerate edges");
    rep.warn("no length bound given; words are bounded by degree alone");
  }
  return TruncationPolicy{degree, cfg.max_length};
}

// ----------------------------------------------------------------------------

void run_check(const RunConfig& cfg, const ReducedSimplicialSet& K, Report& rep) {
  const ValidationReport v = validate(K);
  rep.results.push_back({{"check", "validate"}, {"passed", v.ok()}, {"failures", failures_json(v.errors)}});
  rep.table.push_back(pass_text(v.ok()) + "  validate");
  if (!v.ok()) {
    rep.failed = true;
    return;
  }

  const CoassociativityReport co = coassociativity_check(K, K.max_dim());
  rep.results.push_back({{"check", "coassociativity"},
                         {"passed", co.passed},
                         {"simplices_checked", co.simplices_checked},
                         {"failures", failures_json(co.failures)}});
  rep.table.push_back(pass_text(co.passed) + "  coassociativity (" + std::to_string(co.simplices_checked) + " simplices)");

  const TruncationPolicy policy = policy_for(cfg, K, cfg.max_degree, rep);
  const SquareZeroReport d2 = cobar_square_zero(K, policy);
  const SquareZeroReport f2 = fsq_square_zero(K, policy);
  rep.results.push_back({{"check", "cobar_square_zero"},
                         {"passed", d2.passed},
                         {"words_checked", d2.words_checked},
                         {"failures", failures_json(d2.failures)}});
  rep.results.push_back({{"check", "fsq_square_zero"},
                         {"passed", f2.passed},
                         {"words_checked", f2.words_checked},
                         {"failures", failures_json(f2.failures)}});
  rep.table.push_back(pass_text(d2.passed) + "  cobar D^2 = 0 (" + std::to_string(d2.words_checked) + " words)");
  rep.table.push_back(pass_text(f2.passed) + "  necklace d^2 = 0 (" + std::to_string(f2.words_checked) + " words)");

  const IntegerComplex cc = cobar_complex(K, policy);
  const IntegerComplex fc = NecklaceModel(K).complex(policy);
  const ComplexReport cr = verify_complex(cc);
  const ComplexReport fr = verify_complex(fc);
  rep.results.push_back({{"check", "cobar_complex"},
                         {"passed", cr.passed},
                         {"basis_sizes", cc.basis_sizes},
                         {"failures", failures_json(cr.failures)}});
  rep.results.push_back({{"check", "fsq_complex"},
                         {"passed", fr.passed},
                         {"basis_sizes", fc.basis_sizes},
                         {"failures", failures_json(fr.failures)}});
  rep.table.push_back(pass_text(cr.passed) + "  truncated cobar complex");
  rep.table.push_back(pass_text(fr.passed) + "  truncated necklace complex");

  rep.failed = !(co.passed && d2.passed && f2.passed && cr.passed && fr.passed);
}

void run_homology(const RunConfig& cfg, const ReducedSimplicialSet& K, Report& rep) {
  const int top = cfg.max_degree + 1;
  IntegerComplex C;
  json extra = json::object();
  if (cfg.model == "cobar") {
    C = cobar_complex(K, policy_for(cfg, K, top, rep));
  } else if (cfg.model == "fsq") {
    C = NecklaceModel(K).complex(policy_for(cfg, K, top, rep));
  } else {
    if (!cfg.max_length && K.has_edges())
      throw InputError("--max-length is required: '" + K.name() + "' has nondegenerate edges");
    RigidComplex R = rigid_chain_complex(K, top, TruncationPolicy{top, cfg.max_length});
    extra["frontier_generators"] = R.frontier;
    for (const auto& w : R.warnings) rep.warn(w, true);
    C = std::move(R.complex);
  }
  const HomologyResult H = homology(C, 0, cfg.max_degree);
  json r = {{"model", cfg.model}};
  r.update(homology_json(H, C));
  r.update(extra);
  rep.results.push_back(r);
  rep.table.push_back(render_table(H));
}

void run_compare(const RunConfig& cfg, const ReducedSimplicialSet& K, Report& rep) {
  const int top = cfg.max_degree + 1;
  const TruncationPolicy policy = policy_for(cfg, K, cfg.max_degree, rep);

  const PhiReport ph = verify_phi(K, policy, cfg.seed);
  rep.results.push_back({{"check", "phi"},
                         {"passed", ph.passed()},
                         {"bijection", ph.bijection},
                         {"unipotent", ph.unipotent},
                         {"chain_map", ph.chain_map},
                         {"multiplicative", ph.multiplicative},
                         {"words_checked", ph.words_checked},
                         {"pairs_checked", ph.pairs_checked},
                         {"failures", failures_json(ph.failures)}});
  rep.table.push_back(pass_text(ph.passed()) + "  phi: isomorphism, chain map, algebra map (" +
                      std::to_string(ph.words_checked) + " words, " + std::to_string(ph.pairs_checked) + " pairs)");

  const PsiReport ps = verify_psi(K, cfg.max_degree, policy, cfg.seed);
  for (const auto& w : ps.warnings) rep.warn(w, true);
  rep.results.push_back({{"check", "psi"},
                         {"passed", ps.passed()},
                         {"chain_map", ps.chain_map},
                         {"homology_agrees", ps.homology_agrees},
                         {"product_consistent", ps.product_consistent},
                         {"product_order", ps.product_order},
                         {"length_bound", ps.length_bound},
                         {"words_checked", ps.words_checked},
                         {"pairs_checked", ps.pairs_checked},
                         {"rigid_frontier", ps.rigid_frontier},
                         {"fsq_frontier", ps.fsq_frontier},
                         {"rigid_homology", ranks_line(ps.rigid_homology)},
                         {"fsq_homology", ranks_line(ps.fsq_homology)},
                         {"failures", failures_json(ps.failures)}});
  rep.table.push_back(pass_text(ps.passed()) + "  psi: chain map, homology (" + ranks_line(ps.rigid_homology) +
                      "), product order " + ps.product_order + ", length <= " + std::to_string(ps.length_bound));

  // The length quotients of the cobar and necklace complexes correspond under phi.
  const TruncationPolicy quotient{top, policy.max_length};
  const IntegerComplex cc = cobar_complex(K, quotient);
  const IntegerComplex fc = NecklaceModel(K).complex(quotient);
  const HomologyResult hc = homology(cc, 0, cfg.max_degree);
  const HomologyResult hf = homology(fc, 0, cfg.max_degree);
  bool agree = true;
  for (int n = 0; n <= cfg.max_degree; ++n) agree = agree && hc.at(n) == hf.at(n);
  rep.results.push_back({{"check", "homology_agreement"},
                         {"passed", agree},
                         {"cobar", homology_json(hc, cc)},
                         {"fsq", homology_json(hf, fc)}});
  rep.table.push_back(pass_text(agree) + "  cobar vs necklace homology (" + ranks_line(hc) + " | " + ranks_line(hf) +
                      ")");

  rep.failed = !(ph.passed() && ps.passed() && agree);
}

void run_pi0_ring(const ReducedSimplicialSet& K, Report& rep) {
  const RingPresentation P = h0_ring_presentation(K);
  json rels = json::array();
  for (const auto& r : P.relations)
    rels.push_back({{"simplex", r.simplex}, {"raw", r.raw_text}, {"monoid", r.monoid_text}, {"trivial", r.trivial}});
  rep.results.push_back({{"generators", P.generators},
                         {"free", P.is_free()},
                         {"monoid_relations", P.monoid_relations()},
                         {"relations", rels}});
  std::string gens;
  for (const auto& g : P.generators) gens += (gens.empty() ? "" : ", ") + g;
  rep.table.push_back("generators: " + (gens.empty() ? std::string("none") : gens));
  if (P.is_free()) rep.table.push_back("free (no nontrivial relations)");
  for (const auto& r : P.relations)
    rep.table.push_back("  " + r.simplex + ": " + r.raw_text + "   [" + (r.trivial ? "trivial" : r.monoid_text) + "]");
}

json config_json(const RunConfig& cfg, const std::string& space) {
  json c = {{"command", cfg.command}, {"input", cfg.input}, {"space", space}, {"max_degree", cfg.max_degree}};
  c["max_length"] = cfg.max_length ? json(*cfg.max_length) : json(nullptr);
  if (cfg.command == "homology") c["model"] = cfg.model;
  c["seed"] = cfg.seed;
  c["strict"] = cfg.strict;
  return c;
}

int run(const RunConfig& cfg) {
  Report rep;
  std::string space;
  try {
    const ReducedSimplicialSet K = load_space(cfg.input);
    space = K.name();
    if (cfg.command != "check") {
      const ValidationReport v = validate(K);
      if (!v.ok()) throw InputError("invalid simplicial set: " + v.errors.front());
    }
    if (cfg.command == "check") run_check(cfg, K, rep);
    else if (cfg.command == "homology") run_homology(cfg, K, rep);
    else if (cfg.command == "compare") run_compare(cfg, K, rep);
    else run_pi0_ring(K, rep);
  } catch (const InputError& e) {
    std::cerr << "cobar-kit: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cobar-kit: " << e.what() << "\n";
    return kInputError;
  }

  const bool failed = rep.failed || (cfg.strict && rep.frontier);
  if (cfg.format == "json") {
    json out = {{"tool", "cobar-kit"},
                {"version", COBAR_KIT_VERSION},
                {"config", config_json(cfg, space)},
                {"results", rep.results},
                {"warnings", rep.warnings}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "cobar-kit " << cfg.command << " " << space;
    if (cfg.command != "pi0-ring")
      std::cout << "  (max degree " << cfg.max_degree << ", max length "
                << (cfg.max_length ? std::to_string(*cfg.max_length) : "unbounded") << ")";
    std::cout << "\n";
    for (const auto& line : rep.table) std::cout << line << (line.ends_with('\n') ? "" : "\n");
    for (const auto& w : rep.warnings) std::cout << "warning: " << w.get<std::string>() << "\n";
  }
  return failed ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cobar, necklace and rigidification models of loop-space chains"};
  app.set_version_flag("--version", COBAR_KIT_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "JSON file or builtin:<name>")->required();
    sub->add_option("--max-degree", cfg.max_degree, "Degree bound N")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-length", cfg.max_length, "Word-length bound L (omit for unbounded)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    sub->add_flag("--strict", cfg.strict, "Treat truncation-frontier warnings as failures");
  };
  CLI::App* check = app.add_subcommand("check", "Validate the space and check D^2 = 0 and coassociativity");
  CLI::App* hom = app.add_subcommand("homology", "Homology of one model in degrees 0..N");
  CLI::App* cmp = app.add_subcommand("compare", "Verify phi and psi and compare homology across models");
  CLI::App* pi0 = app.add_subcommand("pi0-ring", "Presentation of the degree-zero homology ring");
  for (CLI::App* sub : {check, hom, cmp, pi0}) add_common(sub);
  hom->add_option("--model", cfg.model, "cobar | fsq | rigid")->check(CLI::IsMember({"cobar", "fsq", "rigid"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg);
}
