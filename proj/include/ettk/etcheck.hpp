#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ettk/abelian.hpp"
#include "ettk/blocks.hpp"
#include "ettk/chartab.hpp"

namespace ettk {

bool dim_congruence(const Integer& dim, const CharacterTable& t, long p, bool trivial_source);

struct ClassWitness {
  int class_index;
  Cyclotomic value;
};

struct ValueTest {
  bool ok = true;
  std::vector<ClassWitness> witnesses;  // failing classes
};

// Value 1 at every nontrivial p-element.
ValueTest et_value_test(const ClassFunction& phi, long p);
// Absolute value 1 at every p-singular element.
ValueTest lift_value_test(const ClassFunction& phi, long p);
bool trivial_source_test(const ClassFunction& phi, long p, bool full_vertex);

struct EtVerdict {
  bool dim_ok = false;
  bool values_ok = false;
  bool lift_ok = false;
  bool trivial_source_ok = false;
  std::vector<std::string> detail;
};

EtVerdict et_verdict(const ClassFunction& phi, long p, bool full_vertex = true);

struct CandidateOptions {
  bool principal_only = true;
  bool require_dim = true;
  bool full_vertex = true;
  int cap = 20;
};

struct Candidate {
  Decomposition decomposition;
  EtVerdict verdict;
};

struct CandidateSet {
  std::string lambda;
  Decomposition induced;   // full decomposition of Ind(lambda)
  Decomposition searched;  // after the block filter
  std::vector<Candidate> candidates;  // by degree, then by multiplicity vector
};

CandidateSet green_candidates(const FusionMap& f, const std::string& lambda, long p,
                              const CandidateOptions& opt = {});

nlohmann::json verdict_to_json(const CharacterTable& t, const EtVerdict& v);
nlohmann::json candidates_to_json(const CandidateSet& cs);

struct TGroupReport {
  long torsion_free_rank = 0;
  std::vector<InvariantFactors> tt_candidates;
  long omega_order = 0;  // 0 stands for infinite
  bool determined = false;
  std::string rule;      // "i", "ii" or "iii"
};

TGroupReport cyclic_tg(const InvariantFactors& x, long e);
nlohmann::json tgroup_to_json(const TGroupReport& r);

struct TTFlags {
  bool normal_p_subgroup = false;
  bool perfect = false;
  bool self_normalizing_sylow = false;
  bool torsion_free_sylow_t = false;
};

// "TT trivial" when one of the two sufficient conditions holds.
std::optional<std::string> high_rank_tt_rules(const TTFlags& f);

}  // namespace ettk
