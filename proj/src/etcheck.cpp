#include "ettk/etcheck.hpp"

#include <algorithm>
#include <numeric>

#include "ettk/error.hpp"

namespace ettk {

namespace {

bool is_p_power(long n, long p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

bool p_element(const ClassInfo& c, long p) { return c.element_order > 1 && is_p_power(c.element_order, p); }

}  // namespace

bool dim_congruence(const Integer& dim, const CharacterTable& t, long p, bool trivial_source) {
  Integer q = p_part(t.order, p);
  if (trivial_source) return (dim - 1) % q == 0;
  if (p == 2) q /= 2;
  if (q == 1) return true;
  return (dim - 1) % q == 0 || (dim + 1) % q == 0;
}

ValueTest et_value_test(const ClassFunction& phi, long p) {
  ValueTest r;
  const auto& t = *phi.table();
  const Cyclotomic one(1L);
  for (size_t c = 0; c < t.class_count(); ++c)
    if (p_element(t.classes[c], p) && phi[c] != one) r.witnesses.push_back({static_cast<int>(c), phi[c]});
  r.ok = r.witnesses.empty();
  return r;
}

ValueTest lift_value_test(const ClassFunction& phi, long p) {
  ValueTest r;
  const auto& t = *phi.table();
  for (size_t c = 0; c < t.class_count(); ++c)
    if (t.classes[c].element_order % p == 0 && !phi[c].abs_is_one())
      r.witnesses.push_back({static_cast<int>(c), phi[c]});
  r.ok = r.witnesses.empty();
  return r;
}

bool trivial_source_test(const ClassFunction& phi, long p, bool full_vertex) {
  const auto& t = *phi.table();
  for (size_t c = 0; c < t.class_count(); ++c) {
    if (!p_element(t.classes[c], p)) continue;
    auto v = phi[c].as_integer();
    if (!v || *v < (full_vertex ? 1 : 0)) return false;
  }
  return true;
}

EtVerdict et_verdict(const ClassFunction& phi, long p, bool full_vertex) {
  EtVerdict v;
  const auto& t = *phi.table();
  v.trivial_source_ok = trivial_source_test(phi, p, full_vertex);
  auto deg = phi.degree().as_integer();
  v.dim_ok = deg && dim_congruence(*deg, t, p, v.trivial_source_ok);
  if (!v.dim_ok) v.detail.push_back("degree " + phi.degree().str() + " fails the congruence");
  auto et = et_value_test(phi, p);
  v.values_ok = et.ok;
  for (const auto& w : et.witnesses)
    v.detail.push_back("value " + w.value.str() + " on class " + t.classes[w.class_index].name);
  auto lift = lift_value_test(phi, p);
  v.lift_ok = lift.ok;
  for (const auto& w : lift.witnesses)
    v.detail.push_back("|value| != 1 on p-singular class " + t.classes[w.class_index].name);
  return v;
}

CandidateSet green_candidates(const FusionMap& f, const std::string& lambda, long p, const CandidateOptions& opt) {
  const auto& big = f.big;
  ClassFunction lam = ClassFunction::irreducible(f.sub, lambda);
  long o = linear_order(lam);
  if (o % p == 0) fail("NotPPrimeOrder", lambda + " has order " + std::to_string(o) + " divisible by " + std::to_string(p));

  CandidateSet cs;
  cs.lambda = lambda;
  cs.induced = decompose(induce(lam, f));
  if (opt.principal_only) {
    BlockPartition bp = block_partition(*big, p);
    cs.searched = block_filter(cs.induced, bp, bp.principal);
  } else {
    cs.searched = cs.induced;
  }

  std::vector<int> support;
  for (size_t i = 0; i < cs.searched.multiplicity.size(); ++i)
    if (cs.searched.multiplicity[i] != 0) support.push_back(static_cast<int>(i));
  if (static_cast<int>(support.size()) > opt.cap)
    fail("CapExceeded", std::to_string(support.size()) + " distinct constituents exceed the cap of " +
                            std::to_string(opt.cap));

  std::vector<size_t> pclasses;
  for (size_t c = 0; c < big->class_count(); ++c)
    if (p_element(big->classes[c], p)) pclasses.push_back(c);
  const Integer sylow = p_part(big->order, p);

  std::vector<long> bound;
  for (int i : support) bound.push_back(cs.searched.multiplicity[i].get_si());
  std::vector<long> pick(support.size(), 0);
  while (true) {
    size_t k = 0;
    while (k < pick.size() && pick[k] == bound[k]) pick[k++] = 0;
    if (k == pick.size()) break;
    ++pick[k];

    Integer deg = 0;
    for (size_t j = 0; j < support.size(); ++j)
      deg += pick[j] * *big->irreducibles[support[j]].values[0].as_integer();
    if (opt.require_dim && (deg - 1) % sylow != 0) continue;

    bool ts = true;
    for (size_t c : pclasses) {
      Cyclotomic v(0L);
      for (size_t j = 0; j < support.size(); ++j)
        if (pick[j]) v += big->irreducibles[support[j]].values[c] * Cyclotomic(pick[j]);
      auto n = v.as_integer();
      if (!n || *n < (opt.full_vertex ? 1 : 0)) {
        ts = false;
        break;
      }
    }
    if (!ts) continue;

    std::vector<Integer> m(big->irreducibles.size(), 0);
    for (size_t j = 0; j < support.size(); ++j) m[support[j]] = pick[j];
    Decomposition d = decomposition_from(big, std::move(m));
    EtVerdict v = et_verdict(d.character(), p, opt.full_vertex);
    cs.candidates.push_back({std::move(d), std::move(v)});
  }
  std::sort(cs.candidates.begin(), cs.candidates.end(), [](const Candidate& a, const Candidate& b) {
    Integer da = *a.decomposition.character().degree().as_integer();
    Integer db = *b.decomposition.character().degree().as_integer();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.decomposition.multiplicity.begin(), a.decomposition.multiplicity.end(),
                                        b.decomposition.multiplicity.begin(), b.decomposition.multiplicity.end(),
                                        [](const Integer& x, const Integer& y) { return x > y; });
  });
  return cs;
}

nlohmann::json verdict_to_json(const CharacterTable&, const EtVerdict& v) {
  return {{"dim_ok", v.dim_ok},
          {"values_ok", v.values_ok},
          {"lift_ok", v.lift_ok},
          {"trivial_source_ok", v.trivial_source_ok},
          {"detail", v.detail}};
}

nlohmann::json candidates_to_json(const CandidateSet& cs) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : cs.candidates) {
    list.push_back({{"character", c.decomposition.str()},
                    {"degree", c.decomposition.character().degree().str()},
                    {"endotrivial", c.verdict.values_ok},
                    {"verdict", verdict_to_json(*cs.induced.table, c.verdict)}});
  }
  return {{"lambda", cs.lambda},
          {"induced", cs.induced.str()},
          {"searched", cs.searched.str()},
          {"candidates", list}};
}

TGroupReport cyclic_tg(const InvariantFactors& x_in, long e) {
  if (e < 1) fail("DomainError", "inertial index must be positive");
  InvariantFactors x = normalize_abelian(x_in);
  TGroupReport r;
  r.omega_order = 2 * e;
  if (e % 2 == 1) {
    auto t = x;
    t.push_back(2);
    r.tt_candidates = {normalize_abelian(t)};
    r.determined = true;
    r.rule = "i";
    return r;
  }
  if (abelian_order(x) == e) {
    r.tt_candidates = {normalize_abelian({2 * e})};
    r.determined = true;
    r.rule = "ii";
    return r;
  }
  for (const auto& t : abelian_groups_of_order(2 * abelian_order(x)))
    if (abelian_embeds(x, t) && abelian_embeds({2 * e}, t)) r.tt_candidates.push_back(t);
  r.determined = r.tt_candidates.size() == 1;
  r.rule = "iii";
  return r;
}

nlohmann::json tgroup_to_json(const TGroupReport& r) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& t : r.tt_candidates) c.push_back(abelian_str(t));
  nlohmann::json j = {{"torsion_free_rank", r.torsion_free_rank},
                      {"candidates", c},
                      {"determined", r.determined},
                      {"rule", r.rule}};
  if (r.omega_order == 0)
    j["omega_order"] = "infinite";
  else
    j["omega_order"] = r.omega_order;
  if (r.determined) j["T"] = abelian_str(r.tt_candidates.front());
  return j;
}

std::optional<std::string> high_rank_tt_rules(const TTFlags& f) {
  if ((f.normal_p_subgroup && f.perfect && f.torsion_free_sylow_t) ||
      (f.self_normalizing_sylow && f.torsion_free_sylow_t))
    return std::string("TT trivial");
  return std::nullopt;
}

}  // namespace ettk
