#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ettk/abelian.hpp"
#include "ettk/blocks.hpp"
#include "ettk/error.hpp"
#include "ettk/etcheck.hpp"
#include "ettk/perm.hpp"
#include "ettk/rank.hpp"
#include "ettk/registry.hpp"
#include "ettk/reproduce.hpp"

using namespace ettk;

namespace {

struct Output {
  nlohmann::json json;
  std::vector<std::string> prose;
  int status = 0;
};

bool is_path(const std::string& s) { return s.size() > 5 && s.substr(s.size() - 5) == ".json"; }

PermGroup resolve_generators(const FixtureRegistry* reg, const std::string& s) {
  if (is_path(s) || !reg) return load_generators(s);
  return reg->generators(s);
}

FusionMap resolve_fusion(const FixtureRegistry& reg, const std::string& sub, const std::string& big,
                         const std::string& fusion) {
  if (fusion.empty() && !is_path(sub) && !is_path(big)) return reg.fusion(sub, big);
  if (fusion.empty()) fail("UsageError", "--fusion is required when tables are given as files");
  FusionMap f = load_fusion(fusion, resolve_table(reg, sub), resolve_table(reg, big));
  auto rep = validate_fusion(f);
  if (!rep.ok()) fail("InvalidFusion", rep.issues.front());
  return f;
}

std::string char_id(const FixtureRegistry& reg, const std::string& table, const std::string& label) {
  return is_path(table) ? label : reg.character_id(table, label);
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::logic_error&) {
      fail("ParseError", "bad integer '" + tok + "' in '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endotrivial module toolkit: character tables, blocks, candidates and rank counts"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  std::string fixtures;
  app.add_flag("--pretty", pretty, "Prose output instead of JSON");
  app.add_option("--fixtures", fixtures, "Fixture directory (default: $ETTK_FIXTURES or the build tree)");

  std::string table, gens_arg, sub, big, fusion, chr, block = "principal", xs, section, name = "G";
  long p = 0, e = 0, ideal = 0;
  int cap = 20;
  bool all_linear = false, all_blocks = false, no_dim = false;
  std::vector<std::string> mats, merges;

  auto* validate = app.add_subcommand("validate", "Check a character table (orthogonality, power maps, ...)");
  validate->add_option("TABLE", table, "Fixture name or .json path")->required();

  auto* dixon = app.add_subcommand("dixon", "Character table of a permutation group by Dixon-Schneider");
  dixon->add_option("GENS", gens_arg, "Generator fixture name or .json path")->required();
  dixon->add_option("--name", name, "Name of the produced table");

  auto* xgroup = app.add_subcommand("xgroup", "Group of p'-order linear characters");
  xgroup->add_option("-p", p, "Prime")->required();
  xgroup->add_option("TABLE", table, "Fixture name or .json path")->required();

  auto* blocks = app.add_subcommand("blocks", "p-block distribution of the irreducibles");
  blocks->add_option("-p", p, "Prime")->required();
  blocks->add_option("--ideal", ideal, "Index of the prime ideal above p");
  blocks->add_option("TABLE", table, "Fixture name or .json path")->required();

  auto* ind = app.add_subcommand("induce", "Induce a character and decompose, optionally block-filtered");
  ind->add_option("--sub", sub, "Subgroup table")->required();
  ind->add_option("--big", big, "Group table")->required();
  ind->add_option("--fusion", fusion, "Fusion map file (default: from the registry)");
  ind->add_option("--char", chr, "Character id or label on the subgroup")->required();
  auto* ind_p = ind->add_option("-p", p, "Prime for the block filter");
  ind->add_option("--block", block, "principal, or a block id")->needs(ind_p);

  auto* cand = app.add_subcommand("candidates", "Green correspondent candidates of linear characters");
  cand->add_option("--sub", sub, "Normaliser table")->required();
  cand->add_option("--big", big, "Group table")->required();
  cand->add_option("--fusion", fusion, "Fusion map file (default: from the registry)");
  auto* cand_char = cand->add_option("--char", chr, "Linear character id or label");
  cand->add_flag("--all-linear", all_linear, "Every nontrivial linear character of p'-order")->excludes(cand_char);
  cand->add_option("-p", p, "Prime")->required();
  cand->add_flag("--all-blocks", all_blocks, "Search every block, not only the principal one");
  cand->add_flag("--no-dim", no_dim, "Skip the degree congruence");
  cand->add_option("--cap", cap, "Maximum number of distinct constituents");

  auto* orb = app.add_subcommand("orbits", "Orbits of a subgroup of GL2(p) on the projective line");
  orb->add_option("-p", p, "Prime")->required();
  orb->add_option("--gens", mats, "Matrix \"a,b;c,d\" (repeatable)")->required();
  orb->add_option("--merge", merges, "Identify points \"i~j\" (repeatable)");

  auto* ctg = app.add_subcommand("cyclic-tg", "T(G) for a cyclic Sylow subgroup from X(H) and e");
  ctg->add_option("--x", xs, "Cyclic orders of X(H), comma separated")->required();
  ctg->add_option("--e", e, "Inertial index")->required();

  auto* rep = app.add_subcommand("reproduce", "Run a scripted computation");
  rep->add_option("SECTION", section, "One of: " + [] {
    std::string s;
    for (const auto& n : reproduce_sections()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }())->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  Output out;
  try {
    auto registry = [&]() -> const FixtureRegistry& {
      static std::unique_ptr<FixtureRegistry> reg;
      if (!reg) reg = std::make_unique<FixtureRegistry>(fixtures);
      return *reg;
    };
    auto load = [&](const std::string& s) {
      if (is_path(s)) return load_table(s);
      return load_table(registry().path(s));
    };

    if (*validate) {
      auto t = load(table);
      auto r = validate_table(*t);
      out.json = {{"table", t->name}, {"ok", r.ok()}, {"issues", r.issues}};
      out.prose.push_back(t->name + (r.ok() ? ": valid" : ": INVALID"));
      for (const auto& s : r.issues) out.prose.push_back("  " + s);
      out.status = r.ok() ? 0 : 1;
    } else if (*dixon) {
      const FixtureRegistry* reg = is_path(gens_arg) ? nullptr : &registry();
      auto g = resolve_generators(reg, gens_arg);
      auto t = dixon_table(g, name);
      auto r = validate_table(t);
      out.json = table_to_json(t);
      out.json["validation"] = r.issues;
      out.prose.push_back(name + ": order " + t.order.get_str() + ", " + std::to_string(t.class_count()) +
                          " classes, " + (r.ok() ? "valid" : "INVALID"));
      std::string degs;
      for (const auto& chi : t.irreducibles) degs += (degs.empty() ? "" : " ") + chi.values[0].str();
      out.prose.push_back("degrees: " + degs);
      out.status = r.ok() ? 0 : 1;
    } else if (*xgroup) {
      auto x = linear_p_prime_group(load(table), p);
      nlohmann::json el = nlohmann::json::array();
      for (size_t i = 0; i < x.elements.size(); ++i)
        el.push_back({{"id", load(table)->irreducibles[x.elements[i]].id}, {"order", x.orders[i]}});
      out.json = {{"X", abelian_str(x.invariant_factors)}, {"invariant_factors", x.invariant_factors},
                  {"characters", el}};
      if (!x.note.empty()) out.json["note"] = x.note;
      out.prose.push_back("X = " + abelian_str(x.invariant_factors) + " (" + std::to_string(x.size()) +
                          " linear characters of p'-order)");
    } else if (*blocks) {
      auto t = load(table);
      auto bp = block_partition(*t, p, static_cast<size_t>(ideal));
      out.json = block_report_json(*t, bp);
      for (const auto& b : bp.blocks)
        out.prose.push_back(b.id + " defect " + std::to_string(b.defect) +
                            (b.id == bp.principal_block().id ? " (principal)" : ""));
    } else if (*ind) {
      auto f = resolve_fusion(registry(), sub, big, fusion);
      auto lam = ClassFunction::irreducible(f.sub, char_id(registry(), sub, chr));
      auto d = decompose(induce(lam, f));
      out.json = {{"induced", d.str()}};
      out.prose.push_back("Ind(" + chr + ") = " + d.str());
      if (p != 0) {
        auto bp = block_partition(*f.big, p);
        size_t b = block == "principal" ? bp.principal : static_cast<size_t>(bp.find(block));
        auto fd = block_filter(d, bp, b);
        out.json["block"] = bp.blocks[b].id;
        out.json["filtered"] = fd.str();
        out.prose.push_back("e.Ind(" + chr + ") = " + fd.str() + "  [" + bp.blocks[b].id + "]");
      }
    } else if (*cand) {
      auto f = resolve_fusion(registry(), sub, big, fusion);
      CandidateOptions opt;
      opt.principal_only = !all_blocks;
      opt.require_dim = !no_dim;
      opt.cap = cap;
      std::vector<std::string> lambdas;
      if (all_linear) {
        auto x = linear_p_prime_group(f.sub, p);
        for (int i : x.elements)
          if (linear_order(ClassFunction::irreducible(f.sub, static_cast<size_t>(i))) > 1)
            lambdas.push_back(f.sub->irreducibles[i].id);
      } else if (!chr.empty()) {
        lambdas.push_back(char_id(registry(), sub, chr));
      } else {
        fail("UsageError", "give --char or --all-linear");
      }
      out.json = nlohmann::json::array();
      for (const auto& l : lambdas) {
        auto cs = green_candidates(f, l, p, opt);
        out.json.push_back(candidates_to_json(cs));
        out.prose.push_back(l + ": " + cs.searched.str());
        if (cs.candidates.empty()) out.prose.push_back("  no candidate");
        for (const auto& c : cs.candidates)
          out.prose.push_back("  candidate " + c.decomposition.str() + ": endotrivial = " +
                              (c.verdict.values_ok ? "yes" : "no"));
      }
    } else if (*orb) {
      std::vector<Mat2> g;
      for (const auto& m : mats) g.push_back(parse_mat2(p, m));
      std::vector<std::pair<long, long>> mg;
      for (const auto& m : merges) mg.push_back(parse_merge(m));
      auto r = proj_line_orbits(p, g, mg);
      out.json = orbit_report_json(r);
      for (const auto& o : r.orbits) {
        std::string s;
        for (long i : o) s += (s.empty() ? "" : " ") + point_label(p, i);
        out.prose.push_back("{" + s + "}");
      }
      out.prose.push_back(std::to_string(r.orbit_count()) + " orbits");
    } else if (*ctg) {
      auto r = cyclic_tg(parse_longs(xs), e);
      out.json = tgroup_to_json(r);
      std::string c;
      for (const auto& t : r.tt_candidates) c += (c.empty() ? "" : " or ") + abelian_str(t);
      out.prose.push_back("T(G) = " + c + (r.determined ? "" : " (undetermined)") + ", rule " + r.rule);
    } else if (*rep) {
      auto r = reproduce(registry(), section);
      out.json = r.report;
      out.json["section"] = r.name;
      out.prose = r.prose;
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    const std::string& n = err.name();
    return (n == "UsageError" || n == "ParseError" || n == "UnknownSection" || n == "UnknownFixture" ||
            n == "UnknownCharacter")
               ? 2
               : 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }

  if (pretty)
    for (const auto& l : out.prose) std::cout << l << "\n";
  else
    std::cout << out.json.dump(2) << "\n";
  return out.status;
}
