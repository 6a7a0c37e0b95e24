#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <set>

#include "doctest.h"
#include "ettk/rank.hpp"
#include "support.hpp"

using namespace ettk;
using testing::error_name;
using testing::registry;

namespace {

using Vec = std::array<long, 2>;
using M = std::array<long, 4>;

// Projective points as normalised column vectors: first nonzero entry 1.
Vec normalise(Vec v, long p) {
  long lead = v[0] % p ? v[0] : v[1];
  long inv = 1;
  while (lead * inv % p != 1) ++inv;
  return {v[0] * inv % p, v[1] * inv % p};
}

Vec apply(const M& m, const Vec& v, long p) {
  return normalise({(m[0] * v[0] + m[1] * v[1]) % p, (m[2] * v[0] + m[3] * v[1]) % p}, p);
}

long index_of(const Vec& v, long p) { return v[0] == 1 ? v[1] : p; }

std::set<std::set<long>> oracle_orbits(long p, const std::vector<M>& gens) {
  std::set<std::set<long>> out;
  std::set<long> done;
  for (long s = 0; s <= p; ++s) {
    if (done.count(s)) continue;
    std::set<long> orb{s};
    std::vector<Vec> todo{s < p ? Vec{1, s} : Vec{0, 1}};
    while (!todo.empty()) {
      Vec v = todo.back();
      todo.pop_back();
      for (const auto& g : gens) {
        Vec w = apply(g, v, p);
        if (orb.insert(index_of(w, p)).second) todo.push_back(w);
      }
    }
    done.insert(orb.begin(), orb.end());
    out.insert(orb);
  }
  return out;
}

std::set<std::set<long>> as_sets(const ProjOrbitReport& r) {
  std::set<std::set<long>> out;
  for (const auto& o : r.orbits) out.insert(std::set<long>(o.begin(), o.end()));
  return out;
}

M to_array(const Mat2& m) { return {m.a, m.b, m.c, m.d}; }

M mmul(const M& x, const M& y, long p) {
  return {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
          (x[2] * y[1] + x[3] * y[3]) % p};
}

std::map<long, long> oracle_profile(long p, const std::vector<M>& gens) {
  const M id{1, 0, 0, 1};
  std::set<M> group{id};
  std::vector<M> todo{id};
  while (!todo.empty()) {
    M x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      M y = mmul(x, g, p);
      if (group.insert(y).second) todo.push_back(y);
    }
  }
  std::map<long, long> prof;
  for (const auto& x : group) {
    long o = 1;
    for (M y = x; y != id; y = mmul(y, x, p)) ++o;
    ++prof[o];
  }
  return prof;
}

}  // namespace

TEST_CASE("matrices") {
  auto m = make_mat2(5, 7, -1, 2, 3);
  CHECK(m.a == 2);
  CHECK(m.b == 4);
  CHECK(m.det() == (2 * 3 - 4 * 2 + 25) % 5);
  CHECK(parse_mat2(5, "2,4;2,3") == m);
  CHECK(mat2_str(m) == "2,4;2,3");
  CHECK(error_name([] { make_mat2(3, 1, 2, 2, 1); }) == "SingularGenerator");
  CHECK(error_name([] { parse_mat2(3, "1,2,3"); }) == "ParseError");
  CHECK(error_name([] { parse_mat2(3, "1,x;0,1"); }) == "ParseError");
  CHECK(parse_merge("1~3") == std::pair<long, long>{1, 3});
  CHECK(error_name([] { parse_merge("13"); }) == "ParseError");
  auto id = make_mat2(7, 1, 0, 0, 1);
  for (long i = 0; i <= 7; ++i) CHECK(id.act(i) == i);
  CHECK(point_label(3, 0) == "<x,z>");
  CHECK(point_label(3, 3) == "<y,z>");
}

TEST_CASE("orbit examples") {
  auto m12 = proj_line_orbits(3, {make_mat2(3, 1, 0, 0, 2), make_mat2(3, 2, 0, 0, 1)});
  CHECK(m12.orbit_count() == 3);
  CHECK(as_sets(m12) == std::set<std::set<long>>{{0}, {3}, {1, 2}});
  auto j2 = proj_line_orbits(3, {parse_mat2(3, "1,1;2,1")});
  CHECK(j2.orbit_count() == 1);
  CHECK(j2.orbits[0].size() == 4);
  auto triv = proj_line_orbits(5, {make_mat2(5, 1, 0, 0, 1)});
  CHECK(triv.orbit_count() == 6);
  auto merged = proj_line_orbits(5, {make_mat2(5, 1, 0, 0, 1)}, {{0, 1}, {1, 2}});
  CHECK(merged.orbit_count() == 4);
  CHECK(merged.merges_applied.size() == 2);
  CHECK(error_name([] { proj_line_orbits(5, {}, {{0, 6}}); }) == "DomainError");
  auto j = orbit_report_json(m12);
  CHECK(j["orbit_count"] == 3);
}

TEST_CASE("fixture generators") {
  const auto data = registry().data("rank_cases");
  int n = 0;
  for (const auto& c : data.at("cases")) {
    CAPTURE(c.at("group").get<std::string>());
    long p = c.at("p");
    std::vector<Mat2> gens;
    std::vector<M> raw;
    for (const auto& s : c.at("gens")) {
      gens.push_back(parse_mat2(p, s.get<std::string>()));
      raw.push_back(to_array(gens.back()));
    }
    std::vector<std::pair<long, long>> merges;
    for (const auto& s : c.at("merges")) merges.push_back(parse_merge(s.get<std::string>()));
    auto sig = matrix_group_signature(p, gens);
    CHECK(sig.order == c.at("order").get<long>());
    std::map<long, long> want;
    for (const auto& [k, v] : c.at("order_profile").items()) want[std::stol(k)] = v.get<long>();
    CHECK(sig.order_profile == want);
    CHECK(oracle_profile(p, raw) == want);

    auto r = proj_line_orbits(p, gens, merges);
    CHECK(r.orbit_count() == c.at("orbit_count").get<long>());
    if (merges.empty()) CHECK(as_sets(r) == oracle_orbits(p, raw));
    ++n;
  }
  CHECK(n == 10);
}

TEST_CASE("orbits agree with a vector-level oracle") {
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (long k = 0; k < 40; ++k) {
      std::vector<Mat2> gens;
      std::vector<M> raw;
      for (long s = 0; s < 1 + k % 3; ++s) {
        long a = (k * 7 + s * 3 + 1) % p, b = (k * 5 + s) % p, c = (k * 3 + 2 * s) % p, d = (k + 4 * s + 2) % p;
        if ((a * d - b * c) % p == 0) a = (a + 1) % p;
        if ((a * d - b * c) % p == 0) continue;
        gens.push_back(make_mat2(p, a, b, c, d));
        raw.push_back(to_array(gens.back()));
      }
      CHECK(as_sets(proj_line_orbits(p, gens)) == oracle_orbits(p, raw));
    }
}

TEST_CASE("orbits are conjugation invariant") {
  const long p = 5;
  auto g = make_mat2(p, 2, 1, 1, 1);
  auto gi = make_mat2(p, 1, 4, 4, 2);
  REQUIRE(g * gi == make_mat2(p, 1, 0, 0, 1));
  std::vector<Mat2> gens{parse_mat2(p, "3,4;2,2"), parse_mat2(p, "1,2;0,4")};
  std::vector<Mat2> conj;
  for (const auto& h : gens) conj.push_back(g * h * gi);
  auto a = proj_line_orbits(p, gens), b = proj_line_orbits(p, conj);
  CHECK(a.orbit_count() == b.orbit_count());
  std::set<std::set<long>> moved;
  for (const auto& o : a.orbits) {
    std::set<long> s;
    for (long x : o) s.insert(g.act(x));
    moved.insert(s);
  }
  CHECK(moved == as_sets(b));
}

TEST_CASE("rank rules") {
  CHECK(torsion_free_rank(2, 3) == 3);
  CHECK(torsion_free_rank(3, 0) == 1);
  CHECK(torsion_free_rank(2, 1) == 1);
  CHECK(error_name([] { torsion_free_rank(1, 0); }) == "RankTooSmall");
  CHECK(high_rank_rule(3, 4) == std::optional<long>(1));
  CHECK_FALSE(high_rank_rule(5, 3).has_value());
  CHECK(high_rank_rule(2, 5) == std::optional<long>(1));
  CHECK_FALSE(high_rank_rule(2, 4).has_value());
  CHECK_FALSE(high_rank_rule(3, 3).has_value());
}
