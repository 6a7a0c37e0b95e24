#include "ettk/rank.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "ettk/error.hpp"
#include "ettk/numtheory.hpp"

namespace ettk {

long Mat2::det() const { return pos_mod(a * d - b * c, p); }

Mat2 Mat2::operator*(const Mat2& o) const {
  return {p, pos_mod(a * o.a + b * o.c, p), pos_mod(a * o.b + b * o.d, p), pos_mod(c * o.a + d * o.c, p),
          pos_mod(c * o.b + d * o.d, p)};
}

bool Mat2::operator<(const Mat2& o) const {
  return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
}

long Mat2::act(long point) const {
  long x = point == p ? 0 : 1;
  long y = point == p ? 1 : point;
  long u = pos_mod(a * x + b * y, p), v = pos_mod(c * x + d * y, p);
  if (u == 0) return p;
  return pos_mod(v * mod_inverse(u, p), p);
}

Mat2 make_mat2(long p, long a, long b, long c, long d) {
  if (!is_prime(p)) fail("DomainError", std::to_string(p) + " is not prime");
  Mat2 m{p, pos_mod(a, p), pos_mod(b, p), pos_mod(c, p), pos_mod(d, p)};
  if (m.det() == 0) fail("SingularGenerator", mat2_str(m) + " is singular mod " + std::to_string(p));
  return m;
}

Mat2 parse_mat2(long p, const std::string& s) {
  std::vector<long> e;
  std::string tok;
  for (char ch : s + ",") {
    if (ch == ',' || ch == ';') {
      try {
        size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        e.push_back(v);
      } catch (const std::logic_error&) {
        fail("ParseError", "bad matrix entry '" + tok + "' in '" + s + "'");
      }
      tok.clear();
    } else if (ch != ' ') {
      tok += ch;
    }
  }
  if (e.size() != 4 || std::count(s.begin(), s.end(), ';') != 1)
    fail("ParseError", "matrix must look like a,b;c,d: '" + s + "'");
  return make_mat2(p, e[0], e[1], e[2], e[3]);
}

std::string mat2_str(const Mat2& m) {
  std::ostringstream os;
  os << m.a << ',' << m.b << ';' << m.c << ',' << m.d;
  return os.str();
}

std::pair<long, long> parse_merge(const std::string& s) {
  auto k = s.find('~');
  if (k == std::string::npos) fail("ParseError", "merge must look like i~j: '" + s + "'");
  try {
    size_t u1 = 0, u2 = 0;
    std::string l = s.substr(0, k), r = s.substr(k + 1);
    long i = std::stol(l, &u1), j = std::stol(r, &u2);
    if (u1 != l.size() || u2 != r.size()) throw std::invalid_argument(s);
    return {i, j};
  } catch (const std::logic_error&) {
    fail("ParseError", "merge must look like i~j: '" + s + "'");
  }
}

std::string point_label(long p, long point) {
  if (point == p) return "<y,z>";
  if (point == 0) return "<x,z>";
  return "<xy" + (point == 1 ? std::string() : "^" + std::to_string(point)) + ",z>";
}

ProjOrbitReport proj_line_orbits(long p, const std::vector<Mat2>& gens, const std::vector<std::pair<long, long>>& merges) {
  if (!is_prime(p)) fail("DomainError", std::to_string(p) + " is not prime");
  const long n = p + 1;
  std::vector<long> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](long x, long y) {
    x = find(x), y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (const auto& g : gens) {
    if (g.p != p) fail("DomainError", "generator " + mat2_str(g) + " is not over F_" + std::to_string(p));
    if (g.det() == 0) fail("SingularGenerator", mat2_str(g) + " is singular mod " + std::to_string(p));
    for (long i = 0; i < n; ++i) unite(i, g.act(i));
  }
  ProjOrbitReport r;
  r.p = p;
  for (const auto& [i, j] : merges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      fail("DomainError", "merge " + std::to_string(i) + "~" + std::to_string(j) + " names no point");
    unite(i, j);
    r.merges_applied.emplace_back(i, j);
  }
  std::map<long, std::vector<long>> orb;
  for (long i = 0; i < n; ++i) orb[find(i)].push_back(i);
  for (auto& [root, pts] : orb) r.orbits.push_back(std::move(pts));
  return r;
}

nlohmann::json orbit_report_json(const ProjOrbitReport& r) {
  nlohmann::json orbits = nlohmann::json::array();
  for (const auto& o : r.orbits) {
    nlohmann::json labels = nlohmann::json::array();
    for (long i : o) labels.push_back(point_label(r.p, i));
    orbits.push_back({{"points", o}, {"subgroups", labels}});
  }
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& [i, j] : r.merges_applied) merges.push_back(std::to_string(i) + "~" + std::to_string(j));
  return {{"p", r.p}, {"orbits", orbits}, {"merges_applied", merges}, {"orbit_count", r.orbit_count()}};
}

MatrixGroupSignature matrix_group_signature(long p, const std::vector<Mat2>& gens) {
  Mat2 id = make_mat2(p, 1, 0, 0, 1);
  std::set<Mat2> seen{id};
  std::vector<Mat2> queue{id};
  for (size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens) {
      Mat2 h = queue[k] * g;
      if (seen.insert(h).second) queue.push_back(h);
    }
  MatrixGroupSignature s;
  s.order = static_cast<long>(seen.size());
  for (const auto& m : seen) {
    long o = 1;
    for (Mat2 x = m; !(x == id); x = x * m) ++o;
    ++s.order_profile[o];
  }
  return s;
}

long torsion_free_rank(long p_rank, long max_rank2_classes) {
  if (p_rank < 2) fail("RankTooSmall", "p-rank " + std::to_string(p_rank) + " is below 2");
  if (max_rank2_classes < 0) fail("DomainError", "class count must be non-negative");
  return p_rank == 2 ? max_rank2_classes : max_rank2_classes + 1;
}

std::optional<long> high_rank_rule(long p, long p_rank) {
  if ((p % 2 == 1 && p_rank > p) || (p == 2 && p_rank > 4)) return 1;
  return std::nullopt;
}

}  // namespace ettk
