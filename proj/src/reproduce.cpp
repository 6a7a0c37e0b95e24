#include "ettk/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ettk/abelian.hpp"
#include "ettk/blocks.hpp"
#include "ettk/error.hpp"
#include "ettk/etcheck.hpp"
#include "ettk/rank.hpp"

namespace ettk {

namespace {

void candidate_section(const FixtureRegistry& reg, SectionResult& r, const std::string& sub, const std::string& big,
                       const std::string& label, long p, bool principal) {
  CandidateOptions opt;
  opt.principal_only = principal;
  auto cs = green_candidates(reg.fusion(sub, big), reg.character_id(sub, label), p, opt);
  auto j = candidates_to_json(cs);
  j["label"] = label;
  r.report["candidates"].push_back(j);
  r.prose.push_back((principal ? "e0.Ind(" : "Ind(") + label + ") = " + cs.searched.str());
  if (cs.candidates.empty()) r.prose.push_back("  no trivial source candidate of admissible degree");
  for (const auto& c : cs.candidates)
    r.prose.push_back("  candidate " + c.decomposition.str() + " (degree " + c.decomposition.character().degree().str() +
                      "): endotrivial = " + (c.verdict.values_ok ? "yes" : "no"));
}

SectionResult j2_p3(const FixtureRegistry& reg) {
  SectionResult r{"j2-p3", {{"group", "J2"}, {"p", 3}}, {}};
  auto x = linear_p_prime_group(reg.table("J2N3"), 3);
  r.report["X(N)"] = abelian_str(x.invariant_factors);
  r.prose.push_back("X(N) = " + abelian_str(x.invariant_factors));
  for (const char* l : {"1_4", "1_7"}) candidate_section(reg, r, "J2N3", "J2", l, 3, true);
  return r;
}

SectionResult hs_p5(const FixtureRegistry& reg) {
  SectionResult r{"hs-p5", {{"group", "HS"}, {"p", 5}}, {}};
  candidate_section(reg, r, "HSN5", "HS", "1_5", 5, true);
  return r;
}

SectionResult m24_p3(const FixtureRegistry& reg) {
  SectionResult r{"m24-p3", {{"group", "M24"}, {"p", 3}}, {}};
  candidate_section(reg, r, "M24H", "M24", "1_a", 3, false);
  return r;
}

SectionResult ru_p3(const FixtureRegistry& reg) {
  SectionResult r{"ru-p3", {{"group", "Ru"}, {"p", 3}}, {}};
  auto t = reg.table("Ru");
  auto phi = ClassFunction::irreducible(t, "chi_9") + ClassFunction::irreducible(t, "chi_25");
  auto et = et_value_test(phi, 3);
  nlohmann::json w = nlohmann::json::array();
  for (const auto& c : et.witnesses) w.push_back({{"class", t->classes[c.class_index].name}, {"value", c.value.str()}});
  r.report["character"] = "chi_9+chi_25";
  r.report["endotrivial"] = et.ok;
  r.report["witnesses"] = w;
  r.prose.push_back(std::string("chi_9+chi_25: endotrivial = ") + (et.ok ? "yes" : "no"));
  for (const auto& c : et.witnesses)
    r.prose.push_back("  value " + c.value.str() + " on class " + t->classes[c.class_index].name);
  return r;
}

SectionResult covers(const FixtureRegistry& reg) {
  SectionResult r{"covers", {{"witnesses", nlohmann::json::array()}}, {}};
  struct Case {
    const char* table;
    long p, z;
  };
  for (const auto& c : {Case{"3M22", 2, 3}, Case{"2M12", 3, 2}}) {
    auto t = reg.table(c.table);
    auto w = faithful_et_obstruction(*t, c.p, c.z);
    nlohmann::json j = {{"table", c.table}, {"p", c.p}};
    if (w) {
      j["class"] = t->classes[w->class_index].name;
      j["modulus"] = w->modulus.get_str();
      r.prose.push_back(std::string(c.table) + " p=" + std::to_string(c.p) + ": every faithful character value at " +
                        t->classes[w->class_index].name + " lies in " + w->modulus.get_str() +
                        "Z, so no faithful endotrivial module");
    } else {
      j["class"] = nullptr;
      r.prose.push_back(std::string(c.table) + " p=" + std::to_string(c.p) + ": no obstruction found");
    }
    r.report["witnesses"].push_back(j);
  }
  return r;
}

SectionResult cyclic_sylow(const FixtureRegistry& reg) {
  SectionResult r{"cyclic-sylow", {}, {}};
  auto rows = reg.data("cyclic_sylow").at("rows");
  int agree = 0, ruled = 0, contained = 0, total = 0;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    ++total;
    auto x = row.at("x").get<std::vector<long>>();
    auto t = normalize_abelian(row.at("t").get<std::vector<long>>());
    auto rep = cyclic_tg(x, row.at("e").get<long>());
    bool hit = rep.determined && rep.tt_candidates.front() == t;
    bool in = std::find(rep.tt_candidates.begin(), rep.tt_candidates.end(), t) != rep.tt_candidates.end();
    if (rep.rule != "iii") ++ruled;
    if (hit) ++agree;
    if (in) ++contained;
    auto j = tgroup_to_json(rep);
    j["group"] = row.at("group");
    j["p"] = row.at("p");
    j["expected"] = abelian_str(t);
    j["agrees"] = hit;
    out.push_back(j);
  }
  r.report = {{"rows", out}, {"total", total}, {"rule_i_or_ii", ruled}, {"determined_and_equal", agree},
              {"expected_among_candidates", contained}};
  r.prose.push_back(std::to_string(total) + " rows, " + std::to_string(ruled) + " settled by rule i or ii, " +
                    std::to_string(agree) + " determined and equal, " + std::to_string(contained) +
                    " with the stated group among the candidates");
  return r;
}

SectionResult rank2(const FixtureRegistry& reg) {
  SectionResult r{"rank2", {{"cases", nlohmann::json::array()}}, {}};
  const auto data = reg.data("rank_cases");
  for (const auto& c : data.at("cases")) {
    long p = c.at("p").get<long>();
    std::vector<Mat2> gens;
    for (const auto& s : c.at("gens")) gens.push_back(parse_mat2(p, s.get<std::string>()));
    std::vector<std::pair<long, long>> merges;
    for (const auto& s : c.at("merges")) merges.push_back(parse_merge(s.get<std::string>()));
    auto rep = proj_line_orbits(p, gens, merges);
    auto sig = matrix_group_signature(p, gens);
    auto j = orbit_report_json(rep);
    j["group"] = c.at("group");
    j["structure"] = c.at("structure");
    j["matrix_group_order"] = sig.order;
    r.report["cases"].push_back(j);
    std::string sizes;
    for (const auto& o : rep.orbits) sizes += (sizes.empty() ? "" : "+") + std::to_string(o.size());
    r.prose.push_back(c.at("group").get<std::string>() + " p=" + std::to_string(p) + " (" +
                      c.at("structure").get<std::string>() + "): " + std::to_string(rep.orbit_count()) +
                      " classes of rank 2 elementary abelian subgroups, sizes " + sizes);
  }
  return r;
}

SectionResult xgroups(const FixtureRegistry& reg) {
  SectionResult r{"xgroups", {{"groups", nlohmann::json::array()}}, {}};
  for (const auto& [name, p] : std::vector<std::pair<std::string, long>>{
           {"M11N3", 3}, {"J2N3", 3}, {"J2N5", 5}, {"HSN5", 5}, {"HeN5", 5}, {"2M22N3", 3}}) {
    auto x = linear_p_prime_group(reg.table(name), p);
    r.report["groups"].push_back({{"table", name}, {"p", p}, {"X", abelian_str(x.invariant_factors)}});
    r.prose.push_back(name + " p=" + std::to_string(p) + ": X(N) = " + abelian_str(x.invariant_factors));
  }
  return r;
}

const std::map<std::string, std::function<SectionResult(const FixtureRegistry&)>>& sections() {
  static const std::map<std::string, std::function<SectionResult(const FixtureRegistry&)>> s = {
      {"j2-p3", j2_p3},   {"hs-p5", hs_p5},           {"m24-p3", m24_p3}, {"ru-p3", ru_p3},
      {"covers", covers}, {"cyclic-sylow", cyclic_sylow}, {"rank2", rank2},   {"xgroups", xgroups}};
  return s;
}

}  // namespace

std::vector<std::string> reproduce_sections() {
  std::vector<std::string> out;
  for (const auto& [k, v] : sections()) out.push_back(k);
  return out;
}

SectionResult reproduce(const FixtureRegistry& reg, const std::string& section) {
  auto it = sections().find(section);
  if (it == sections().end()) fail("UnknownSection", "no section named " + section);
  return it->second(reg);
}

}  // namespace ettk
