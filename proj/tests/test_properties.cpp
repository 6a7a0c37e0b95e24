#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "ettk/blocks.hpp"
#include "ettk/etcheck.hpp"
#include "ettk/finite_field.hpp"
#include "ettk/perm.hpp"
#include "ettk/rank.hpp"
#include "support.hpp"

using namespace ettk;
using testing::registry;

namespace {

constexpr int kRandomInputs = 100;

std::mt19937_64& rng() {
  static std::mt19937_64 g(20261016);
  return g;
}

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

Cyclotomic random_cyc(long n, bool integral) {
  std::vector<std::pair<long, Rational>> terms;
  for (long k = uniform(0, 4); k > 0; --k)
    terms.emplace_back(uniform(0, n - 1), integral ? Rational(uniform(-5, 5)) : Rational(uniform(-5, 5), uniform(1, 4)));
  return Cyclotomic::from_terms(n, terms);
}

const std::vector<long> kConductors{1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 21, 24};

std::vector<std::string> table_names() {
  return {"S3", "M11", "M11N3", "J1", "J2", "J2N3", "J2N5", "HS", "HSN5", "M24", "M24H",
          "He", "HeN5", "3M22", "2M12", "2M22", "2M22N3", "Ru", "2Ru"};
}

const std::vector<std::pair<std::string, std::string>> kFusions{
    {"M11N3", "M11"}, {"J2N3", "J2"}, {"J2N5", "J2"}, {"HSN5", "HS"},
    {"M24H", "M24"},  {"HeN5", "He"}, {"2M22N3", "2M22"}};

long phi(long m) {
  long r = 0;
  for (long k = 1; k <= m; ++k) r += std::gcd(k, m) == 1;
  return r;
}

// (table, p) pairs whose residue field construction is cheap enough to repeat
// for every ideal choice.
std::vector<std::pair<TablePtr, long>> block_cases() {
  std::vector<std::pair<TablePtr, long>> out;
  for (const auto& n : table_names()) {
    auto t = registry().table(n);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L}) {
      if (t->order % p != 0) continue;
      long m = t->value_conductor();
      while (m % p == 0) m /= p;
      if (phi(m) <= 2000) out.emplace_back(t, p);
    }
  }
  return out;
}

ClassFunction random_character(const TablePtr& t) {
  auto phi = ClassFunction::zero(t);
  for (size_t i = 0; i < t->irreducibles.size(); ++i)
    if (uniform(0, 2) == 0) phi = phi + ClassFunction::irreducible(t, i).scaled(uniform(1, 3));
  return phi;
}

Perm random_perm(size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng());
  return p;
}

std::set<std::set<int>> block_sets(const BlockPartition& bp) {
  std::set<std::set<int>> out;
  for (const auto& b : bp.blocks) out.insert(std::set<int>(b.members.begin(), b.members.end()));
  return out;
}

bool is_p_power(long n, long p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

Mat2 random_mat(long p) {
  for (;;) {
    long a = uniform(0, p - 1), b = uniform(0, p - 1), c = uniform(0, p - 1), d = uniform(0, p - 1);
    if ((a * d - b * c) % p != 0) return make_mat2(p, a, b, c, d);
  }
}

}  // namespace

TEST_CASE("cyclotomic ring axioms") {
  for (int k = 0; k < kRandomInputs; ++k) {
    long n1 = kConductors[uniform(0, kConductors.size() - 1)];
    long n2 = kConductors[uniform(0, kConductors.size() - 1)];
    auto a = random_cyc(n1, false), b = random_cyc(n2, false), c = random_cyc(n1, false);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Cyclotomic(0L));
    CHECK(a * Cyclotomic(1L) == a);
    CHECK(a + Cyclotomic(0L) == a);
    CHECK(-(-a) == a);
  }
}

TEST_CASE("Galois action is a ring homomorphism") {
  for (int k = 0; k < kRandomInputs; ++k) {
    long n = kConductors[uniform(0, kConductors.size() - 1)];
    auto a = random_cyc(n, false), b = random_cyc(n, false);
    long j = uniform(1, 4 * n);
    while (std::gcd(j, n) != 1) ++j;
    long i = uniform(1, 4 * n);
    while (std::gcd(i, n) != 1) ++i;
    CHECK((a + b).galois(j) == a.galois(j) + b.galois(j));
    CHECK((a * b).galois(j) == a.galois(j) * b.galois(j));
    CHECK(a.galois(i).galois(j) == a.galois(i * j % n == 0 ? 1 : i * j % n));
    CHECK(a.galois(1) == a);
  }
}

TEST_CASE("residue maps are ring homomorphisms") {
  for (int k = 0; k < kRandomInputs; ++k) {
    long N = std::vector<long>{12, 15, 20, 21, 24, 40, 35}[uniform(0, 6)];
    long p = std::vector<long>{2, 3, 5, 7, 11}[uniform(0, 4)];
    size_t choice = uniform(0, ResidueMap::choice_count(N, p) - 1);
    ResidueMap rm(N, p, choice);
    auto a = random_cyc(N, true), b = random_cyc(N, true);
    CHECK(rm.reduce(a + b) == rm.reduce(a) + rm.reduce(b));
    CHECK(rm.reduce(a * b) == rm.reduce(a) * rm.reduce(b));
    auto z = rm.reduce(Cyclotomic::root_of_unity(N)), zn = z;
    for (long i = 1; i < N; ++i) zn = zn * z;
    CHECK(zn == rm.reduce(Cyclotomic(1L)));
  }
}

TEST_CASE("orthogonality on every fixture") {
  CHECK(registry().validate_all().empty());
  for (const auto& n : table_names()) CHECK(validate_table(*registry().table(n)).ok());
}

TEST_CASE("orthogonality on random permutation groups") {
  for (int k = 0; k < kRandomInputs; ++k) {
    size_t n = uniform(2, 6);
    auto g = enumerate_group(n, {random_perm(n), random_perm(n)});
    auto t = std::make_shared<CharacterTable>(dixon_table(g, "G"));
    CAPTURE(g.order());
    CHECK(validate_table(*t).ok());
    Integer sq = 0;
    for (const auto& irr : t->irreducibles) sq += *irr.values[0].as_integer() * *irr.values[0].as_integer();
    CHECK(sq == Integer(static_cast<unsigned long>(g.order())));
  }
}

TEST_CASE("Frobenius reciprocity on every fusion") {
  for (const auto& [s, b] : kFusions) {
    auto f = registry().fusion(s, b);
    std::vector<ClassFunction> res;
    for (size_t j = 0; j < f.big->irreducibles.size(); ++j) res.push_back(restriction(ClassFunction::irreducible(f.big, j), f));
    for (size_t i = 0; i < f.sub->irreducibles.size(); ++i) {
      auto lam = ClassFunction::irreducible(f.sub, i);
      auto ind = induce(lam, f);
      for (size_t j = 0; j < f.big->irreducibles.size(); ++j) {
        CAPTURE(s);
        CHECK(inner_product(ind, ClassFunction::irreducible(f.big, j)) == inner_product(lam, res[j]));
      }
    }
  }
}

TEST_CASE("block partitions do not depend on the ideal") {
  for (const auto& [t, p] : block_cases()) {
    CAPTURE(t->name);
    CAPTURE(p);
    auto ref = block_sets(block_partition(*t, p));
    for (size_t k = 1; k < ideal_choice_count(*t, p); ++k) CHECK(block_sets(block_partition(*t, p, k)) == ref);
  }
}

TEST_CASE("blocks are permuted by Galois conjugation") {
  for (const auto& [t, p] : block_cases()) {
    const long n = t->value_conductor();
    if (n == 1) continue;
    auto bp = block_partition(*t, p);
    long j = uniform(2, n + 1);
    while (std::gcd(j, n) != 1) ++j;
    std::vector<int> image(t->irreducibles.size(), -1);
    for (size_t i = 0; i < t->irreducibles.size(); ++i) {
      std::vector<Cyclotomic> v;
      for (const auto& x : t->irreducibles[i].values) v.push_back(x.galois(j));
      for (size_t k = 0; k < t->irreducibles.size(); ++k)
        if (t->irreducibles[k].values == v) image[i] = static_cast<int>(k);
      REQUIRE(image[i] >= 0);
    }
    auto blocks = block_sets(bp);
    std::multiset<int> d1, d2;
    for (const auto& b : bp.blocks) {
      std::set<int> moved;
      for (int i : b.members) moved.insert(image[i]);
      CHECK(blocks.count(moved) == 1);
      d1.insert(b.defect);
      d2.insert(bp.blocks[bp.block_of[image[b.members[0]]]].defect);
    }
    CHECK(d1 == d2);
  }
}

TEST_CASE("block filters reassemble the character") {
  auto cases = block_cases();
  for (int k = 0; k < kRandomInputs; ++k) {
    const auto& [t, p] = cases[uniform(0, cases.size() - 1)];
    auto bp = block_partition(*t, p);
    auto phi = decompose(random_character(t));
    REQUIRE(phi.ok);
    auto total = ClassFunction::zero(t);
    for (size_t b = 0; b < bp.blocks.size(); ++b) total = total + block_filter(phi, bp, b).character();
    CHECK(total == phi.character());
  }
}

TEST_CASE("orbit counts never grow with more generators or merges") {
  for (int k = 0; k < kRandomInputs; ++k) {
    long p = std::vector<long>{3, 5, 7, 11, 13}[uniform(0, 4)];
    std::vector<Mat2> gens{random_mat(p)};
    auto before = proj_line_orbits(p, gens);
    CHECK(before.orbit_count() <= p + 1);
    long total = 0;
    for (const auto& o : before.orbits) total += o.size();
    CHECK(total == p + 1);
    gens.push_back(random_mat(p));
    auto after = proj_line_orbits(p, gens);
    CHECK(after.orbit_count() <= before.orbit_count());
    auto merged = proj_line_orbits(p, gens, {{uniform(0, p), uniform(0, p)}});
    CHECK(merged.orbit_count() <= after.orbit_count());
  }
}

TEST_CASE("endotrivial values imply the lifting condition on p-elements") {
  auto f = registry().fusion("HSN5", "HS");
  CandidateOptions all;
  all.principal_only = false;
  auto cs = green_candidates(f, registry().character_id("HSN5", "1_5"), 5, all);
  std::vector<ClassFunction> chars;
  for (const auto& c : cs.candidates) chars.push_back(c.decomposition.character());
  for (int k = 0; k < kRandomInputs; ++k) chars.push_back(random_character(registry().table("J2")));
  for (const auto& phi : chars) {
    if (!et_value_test(phi, 5).ok) continue;
    const auto& t = *phi.table();
    for (size_t c = 1; c < t.class_count(); ++c)
      if (is_p_power(t.classes[c].element_order, 5)) CHECK(phi[c].abs_is_one());
  }
}

TEST_CASE("cyclic T(G) candidates have the right shape") {
  for (int k = 0; k < kRandomInputs; ++k) {
    InvariantFactors x;
    for (long r = uniform(1, 3); r > 0; --r) x.push_back(std::vector<long>{2, 3, 4, 6, 8}[uniform(0, 4)]);
    x = normalize_abelian(x);
    long e = uniform(1, 12);
    auto rep = cyclic_tg(x, e);
    CAPTURE(abelian_str(x));
    CAPTURE(e);
    CHECK(rep.determined == (rep.tt_candidates.size() == 1));
    for (const auto& t : rep.tt_candidates) {
      CHECK(abelian_order(t) == 2 * abelian_order(x));
      if (rep.rule == "iii") {
        CHECK(abelian_embeds(x, t));
        CHECK(abelian_embeds({2 * e}, t));
      }
    }
  }
}

TEST_CASE("decompositions and tensor products") {
  auto names = table_names();
  for (int k = 0; k < kRandomInputs; ++k) {
    auto t = registry().table(names[uniform(0, 16)]);
    std::vector<Integer> m(t->irreducibles.size());
    for (auto& x : m) x = uniform(0, 2);
    auto phi = decomposition_from(t, m).character();
    auto d = decompose(phi);
    REQUIRE(d.ok);
    CHECK(d.multiplicity == m);
    auto a = ClassFunction::irreducible(t, static_cast<size_t>(uniform(0, t->irreducibles.size() - 1)));
    auto b = ClassFunction::irreducible(t, static_cast<size_t>(uniform(0, t->irreducibles.size() - 1)));
    auto ab = tensor(a, b);
    CHECK(ab.degree() == a.degree() * b.degree());
    CHECK(decompose(ab).ok);
  }
}
