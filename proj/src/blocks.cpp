#include "ettk/blocks.hpp"

#include <algorithm>
#include <map>

#include "ettk/error.hpp"

namespace ettk {

int BlockPartition::find(const std::string& id) const {
  for (size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].id == id) return static_cast<int>(b);
  fail("UnknownBlock", "no block " + id);
}

std::vector<Cyclotomic> central_character(const CharacterTable& t, int chi) {
  const auto& vals = t.irreducibles.at(chi).values;
  auto deg = vals[0].as_integer();
  if (!deg || *deg <= 0) fail("InvalidTable", t.irreducibles[chi].id + " has no positive integral degree");
  std::vector<Cyclotomic> out;
  out.reserve(vals.size());
  for (size_t c = 0; c < vals.size(); ++c) {
    Cyclotomic w = Cyclotomic(t.classes[c].size) * vals[c] / Rational(*deg);
    if (!w.is_algebraic_integer())
      fail("NonIntegralOmega", "omega of " + t.irreducibles[chi].id + " at " + t.classes[c].name + " is " + w.str());
    out.push_back(std::move(w));
  }
  return out;
}

size_t ideal_choice_count(const CharacterTable& t, long p) {
  return ResidueMap::choice_count(t.value_conductor(), p);
}

BlockPartition block_partition(const CharacterTable& t, long p, size_t ideal_choice) {
  if (!is_prime(p)) fail("DomainError", std::to_string(p) + " is not prime");
  if (t.order % p != 0) fail("DomainError", std::to_string(p) + " does not divide |" + t.name + "|");
  ResidueMap rm(t.value_conductor(), p, ideal_choice);
  const int n = static_cast<int>(t.irreducibles.size());
  std::vector<std::vector<FpPoly>> keys(n);
  for (int i = 0; i < n; ++i)
    for (const auto& w : central_character(t, i)) keys[i].push_back(rm.reduce(w).coords());

  BlockPartition bp;
  bp.p = p;
  bp.block_of.assign(n, -1);
  std::map<std::vector<FpPoly>, int> seen;
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = seen.emplace(keys[i], static_cast<int>(bp.blocks.size()));
    if (fresh) bp.blocks.emplace_back();
    bp.blocks[it->second].members.push_back(i);
    bp.block_of[i] = it->second;
  }
  const int a = p_valuation(t.order, p);
  int trivial = -1;
  for (int i = 0; i < n; ++i) {
    const auto& v = t.irreducibles[i].values;
    if (std::all_of(v.begin(), v.end(), [](const Cyclotomic& x) { return x == Cyclotomic(1L); })) trivial = i;
  }
  if (trivial < 0) fail("InvalidTable", "no trivial character in " + t.name);
  for (auto& b : bp.blocks) {
    int mn = a;
    std::string id = "B[";
    for (size_t k = 0; k < b.members.size(); ++k) {
      mn = std::min(mn, p_valuation(*t.irreducibles[b.members[k]].values[0].as_integer(), p));
      id += (k ? "," : "") + t.irreducibles[b.members[k]].id;
    }
    b.defect = a - mn;
    b.id = id + "]";
  }
  bp.principal = bp.block_of[trivial];
  return bp;
}

Decomposition block_filter(const Decomposition& phi, const BlockPartition& bp, size_t block) {
  if (!phi.ok) fail("DecompositionFailure", "class function is not a character");
  if (block >= bp.blocks.size()) fail("UnknownBlock", "block index out of range");
  std::vector<Integer> m(phi.multiplicity.size(), 0);
  for (int i : bp.blocks[block].members) m[i] = phi.multiplicity[i];
  return decomposition_from(phi.table, std::move(m));
}

nlohmann::json block_report_json(const CharacterTable& t, const BlockPartition& bp) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : bp.blocks) {
    nlohmann::json members = nlohmann::json::array();
    for (int i : b.members) members.push_back(t.irreducibles[i].id);
    blocks.push_back({{"id", b.id}, {"defect", b.defect}, {"members", members}});
  }
  return {{"blocks", blocks}, {"principal", bp.principal_block().id}};
}

std::vector<int> faithful_irreducibles(const CharacterTable& t, long center_order) {
  std::vector<int> z;
  for (int c : t.center)
    if (c != 0 && center_order % t.classes[c].element_order == 0) z.push_back(c);
  std::vector<int> out;
  for (size_t i = 0; i < t.irreducibles.size(); ++i) {
    const auto& v = t.irreducibles[i].values;
    if (std::all_of(z.begin(), z.end(), [&](int c) { return v[c] != v[0]; })) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<ObstructionWitness> faithful_et_witnesses(const CharacterTable& t, long p, long center_order) {
  if (t.center.empty()) fail("MissingCenter", "table " + t.name + " designates no central classes");
  const std::vector<int> faithful = faithful_irreducibles(t, center_order);
  std::vector<ObstructionWitness> out;
  if (faithful.empty()) return out;
  for (size_t c = 0; c < t.class_count(); ++c) {
    if (t.classes[c].element_order % p != 0) continue;
    Integer g = 0;
    bool integral = true;
    for (int i : faithful) {
      auto v = t.irreducibles[i].values[c].as_integer();
      if (!v) {
        integral = false;
        break;
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v->get_mpz_t());
    }
    if (integral && g != 1) out.push_back({static_cast<int>(c), g});
  }
  return out;
}

std::optional<ObstructionWitness> faithful_et_obstruction(const CharacterTable& t, long p, long center_order) {
  auto all = faithful_et_witnesses(t, p, center_order);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace ettk
