#include "ettk/chartab.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "ettk/error.hpp"

namespace ettk {

int CharacterTable::irr_index(const std::string& id) const {
  for (size_t i = 0; i < irreducibles.size(); ++i)
    if (irreducibles[i].id == id) return static_cast<int>(i);
  fail("UnknownCharacter", "no irreducible '" + id + "' in table " + name);
}

int CharacterTable::class_index(const std::string& cname) const {
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == cname) return static_cast<int>(i);
  fail("UnknownClass", "no class '" + cname + "' in table " + name);
}

long CharacterTable::exponent() const {
  long e = 1;
  for (const auto& c : classes) e = std::lcm(e, c.element_order);
  return e;
}

long CharacterTable::value_conductor() const {
  long n = 1;
  for (const auto& chi : irreducibles)
    for (const auto& v : chi.values) n = std::lcm(n, v.conductor());
  return n;
}

ClassFunction::ClassFunction(TablePtr table, std::vector<Cyclotomic> values)
    : table_(std::move(table)), values_(std::move(values)) {
  if (values_.size() != table_->class_count())
    fail("TableMismatch", "class function length differs from class count of " + table_->name);
}

ClassFunction ClassFunction::irreducible(const TablePtr& t, const std::string& id) {
  return {t, t->irreducibles[t->irr_index(id)].values};
}

ClassFunction ClassFunction::irreducible(const TablePtr& t, size_t index) {
  if (index >= t->irreducibles.size()) fail("UnknownCharacter", "irreducible index out of range");
  return {t, t->irreducibles[index].values};
}

ClassFunction ClassFunction::trivial(const TablePtr& t) {
  return {t, std::vector<Cyclotomic>(t->class_count(), Cyclotomic(1L))};
}

ClassFunction ClassFunction::zero(const TablePtr& t) {
  return {t, std::vector<Cyclotomic>(t->class_count(), Cyclotomic())};
}

namespace {

void same_table(const ClassFunction& a, const ClassFunction& b) {
  if (a.table() != b.table() && a.table()->name != b.table()->name)
    fail("TableMismatch", "class functions on " + a.table()->name + " and " + b.table()->name);
  if (a.values().size() != b.values().size()) fail("TableMismatch", "class functions of different length");
}

}  // namespace

ClassFunction ClassFunction::operator+(const ClassFunction& b) const {
  same_table(*this, b);
  std::vector<Cyclotomic> v = values_;
  for (size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
  return {table_, std::move(v)};
}

ClassFunction ClassFunction::operator-(const ClassFunction& b) const {
  same_table(*this, b);
  std::vector<Cyclotomic> v = values_;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= b.values_[i];
  return {table_, std::move(v)};
}

ClassFunction ClassFunction::scaled(const Integer& k) const {
  std::vector<Cyclotomic> v = values_;
  Cyclotomic c(k);
  for (auto& x : v) x *= c;
  return {table_, std::move(v)};
}

bool ClassFunction::operator==(const ClassFunction& b) const {
  return table_->name == b.table_->name && values_ == b.values_;
}

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  same_table(a, b);
  const CharacterTable& t = *a.table();
  Cyclotomic s;
  for (size_t c = 0; c < t.class_count(); ++c) {
    if (a[c].is_zero() || b[c].is_zero()) continue;
    s += Cyclotomic(t.classes[c].size) * a[c] * b[c].conj();
  }
  return s / Rational(t.order);
}

namespace {

void check_fusion_shape(const FusionMap& f) {
  if (f.map.size() != f.sub->class_count())
    fail("TableMismatch", "fusion map length differs from class count of " + f.sub->name);
  for (int c : f.map)
    if (c < 0 || static_cast<size_t>(c) >= f.big->class_count())
      fail("TableMismatch", "fusion image out of range for " + f.big->name);
}

}  // namespace

ClassFunction induce(const ClassFunction& lambda, const FusionMap& f) {
  if (lambda.table()->name != f.sub->name)
    fail("TableMismatch", "character lives on " + lambda.table()->name + ", fusion starts at " + f.sub->name);
  check_fusion_shape(f);
  std::vector<Cyclotomic> v(f.big->class_count());
  for (size_t d = 0; d < f.map.size(); ++d) {
    const int c = f.map[d];
    Rational ratio(f.big->centralizer_order(c), f.sub->centralizer_order(d));
    ratio.canonicalize();
    v[c] += lambda[d] * Cyclotomic(ratio);
  }
  return {f.big, std::move(v)};
}

ClassFunction restriction(const ClassFunction& chi, const FusionMap& f) {
  if (chi.table()->name != f.big->name)
    fail("TableMismatch", "character lives on " + chi.table()->name + ", fusion ends at " + f.big->name);
  check_fusion_shape(f);
  std::vector<Cyclotomic> v;
  v.reserve(f.map.size());
  for (int c : f.map) v.push_back(chi[c]);
  return {f.sub, std::move(v)};
}

ClassFunction tensor(const ClassFunction& a, const ClassFunction& b) {
  same_table(a, b);
  std::vector<Cyclotomic> v = a.values();
  for (size_t i = 0; i < v.size(); ++i) v[i] *= b[i];
  return {a.table(), std::move(v)};
}

std::string Decomposition::str() const {
  if (!ok) return "not a character";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < multiplicity.size(); ++i) {
    if (multiplicity[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (multiplicity[i] != 1) os << multiplicity[i].get_str() << "*";
    os << table->irreducibles[i].id;
  }
  if (first) return "0";
  return os.str();
}

ClassFunction Decomposition::character() const {
  if (!ok) fail("DecompositionFailure", "multiplicities are not non-negative integers");
  ClassFunction sum = ClassFunction::zero(table);
  for (size_t i = 0; i < multiplicity.size(); ++i)
    if (multiplicity[i] != 0) sum = sum + ClassFunction::irreducible(table, i).scaled(multiplicity[i]);
  return sum;
}

Decomposition decompose(const ClassFunction& phi) {
  Decomposition d;
  d.table = phi.table();
  d.ok = true;
  for (size_t i = 0; i < d.table->irreducibles.size(); ++i) {
    Cyclotomic m = inner_product(phi, ClassFunction::irreducible(d.table, i));
    auto z = m.as_integer();
    if (!z || *z < 0) d.ok = false;
    d.multiplicity.push_back(z ? *z : Integer(0));
    d.raw.push_back(std::move(m));
  }
  return d;
}

Decomposition decomposition_from(const TablePtr& t, std::vector<Integer> mult) {
  Decomposition d;
  d.table = t;
  d.ok = std::all_of(mult.begin(), mult.end(), [](const Integer& m) { return m >= 0; });
  for (const auto& m : mult) d.raw.emplace_back(m);
  d.multiplicity = std::move(mult);
  return d;
}

long root_of_unity_order(const Cyclotomic& z) {
  const long bound = 2 * z.conductor();
  Cyclotomic w = z;
  for (long k = 1; k <= bound; ++k) {
    if (w == Cyclotomic(1L)) return k;
    w *= z;
  }
  return 0;
}

long linear_order(const ClassFunction& lambda) {
  if (lambda.degree() != Cyclotomic(1L)) fail("NotLinear", "character of degree " + lambda.degree().str());
  long o = 1;
  for (const auto& v : lambda.values()) {
    long k = root_of_unity_order(v);
    if (k == 0) fail("NotLinear", "value " + v.str() + " is not a root of unity");
    o = std::lcm(o, k);
  }
  return o;
}

namespace {

// Invariant factors of a finite abelian group given by its multiplication
// table: split off a cyclic subgroup of maximal order, pass to the quotient.
std::vector<long> invariant_factors_of(const std::vector<std::vector<int>>& mul, int identity) {
  const int n = static_cast<int>(mul.size());
  std::vector<int> coset(n);
  std::iota(coset.begin(), coset.end(), 0);
  std::vector<long> factors;
  auto canon = [&](int x) { return coset[x]; };
  while (true) {
    std::set<int> reps;
    for (int x = 0; x < n; ++x) reps.insert(canon(x));
    if (reps.size() == 1) break;
    long best = 0;
    int best_x = identity;
    for (int r : reps) {
      long o = 1;
      int y = r;
      while (canon(y) != canon(identity)) {
        y = mul[y][r];
        ++o;
      }
      if (o > best) {
        best = o;
        best_x = r;
      }
    }
    factors.push_back(best);
    // Quotient by the cyclic subgroup generated by best_x.
    std::vector<int> sub{identity};
    for (int y = best_x; canon(y) != canon(identity); y = mul[y][best_x]) sub.push_back(y);
    std::map<int, int> newlabel;
    for (int x = 0; x < n; ++x) {
      int lab = canon(x);
      for (int s : sub) lab = std::min(lab, canon(mul[x][s]));
      newlabel[x] = lab;
    }
    for (int x = 0; x < n; ++x) coset[x] = newlabel[x];
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

}  // namespace

LinearCharacterGroup linear_p_prime_group(const TablePtr& t, long p) {
  LinearCharacterGroup g;
  if (p < 2 || t->order % p != 0) g.note = "p does not divide the group order; all linear characters returned";
  for (size_t i = 0; i < t->irreducibles.size(); ++i) {
    ClassFunction chi = ClassFunction::irreducible(t, i);
    if (chi.degree() != Cyclotomic(1L)) continue;
    long o = linear_order(chi);
    if (p >= 2 && t->order % p == 0 && o % p == 0) continue;
    g.elements.push_back(static_cast<int>(i));
    g.orders.push_back(o);
  }
  const int n = static_cast<int>(g.elements.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n, -1));
  int identity = -1;
  for (int a = 0; a < n; ++a) {
    const auto& va = t->irreducibles[g.elements[a]].values;
    if (std::all_of(va.begin(), va.end(), [](const Cyclotomic& v) { return v == Cyclotomic(1L); })) identity = a;
    for (int b = 0; b < n; ++b) {
      const auto& vb = t->irreducibles[g.elements[b]].values;
      std::vector<Cyclotomic> prod(va.size());
      for (size_t c = 0; c < va.size(); ++c) prod[c] = va[c] * vb[c];
      for (int r = 0; r < n; ++r)
        if (t->irreducibles[g.elements[r]].values == prod) mul[a][b] = r;
      if (mul[a][b] < 0) fail("InvalidTable", "linear characters not closed under product");
    }
  }
  if (identity < 0) fail("InvalidTable", "no trivial character in " + t->name);
  g.invariant_factors = invariant_factors_of(mul, identity);
  return g;
}

}  // namespace ettk

namespace ettk {

namespace {

class Reporter {
public:
  explicit Reporter(ValidationReport& r) : r_(r) {}
  void add(const std::string& kind, const std::string& msg) {
    if (counts_[kind]++ < 5) r_.issues.push_back(kind + ": " + msg);
  }
  ~Reporter() {
    for (const auto& [kind, n] : counts_)
      if (n > 5) r_.issues.push_back(kind + ": " + std::to_string(n - 5) + " further violations");
  }

private:
  ValidationReport& r_;
  std::map<std::string, int> counts_;
};

}  // namespace

ValidationReport validate_table(const CharacterTable& t) {
  ValidationReport report;
  Reporter rep(report);
  const size_t k = t.class_count();
  if (k == 0) {
    rep.add("structure", "table has no classes");
    return report;
  }
  if (t.order <= 0) rep.add("structure", "group order must be positive");
  if (t.classes[0].element_order != 1 || t.classes[0].size != 1)
    rep.add("structure", "first class is not the identity class");
  Integer total = 0;
  for (size_t c = 0; c < k; ++c) {
    const auto& ci = t.classes[c];
    total += ci.size;
    if (ci.size <= 0 || (t.order > 0 && t.order % ci.size != 0))
      rep.add("class sizes", "size of " + ci.name + " does not divide the group order");
    if (ci.element_order < 1) rep.add("structure", "class " + ci.name + " has non-positive element order");
  }
  if (total != t.order)
    rep.add("class sizes", "class sizes sum to " + total.get_str() + ", not " + t.order.get_str());
  if (t.irreducibles.size() != k)
    rep.add("structure", std::to_string(t.irreducibles.size()) + " irreducibles for " + std::to_string(k) + " classes");
  for (const auto& chi : t.irreducibles)
    if (chi.values.size() != k) {
      rep.add("structure", chi.id + " has " + std::to_string(chi.values.size()) + " values");
      return report;
    }
  for (int c : t.center)
    if (c < 0 || static_cast<size_t>(c) >= k || t.classes[c].size != 1)
      rep.add("center", "designated central class " + std::to_string(c) + " is not a singleton class");

  Integer degsq = 0;
  for (const auto& chi : t.irreducibles) {
    auto d = chi.values[0].as_integer();
    if (!d || *d <= 0) rep.add("degrees", chi.id + "(1) is not a positive integer");
    else degsq += *d * *d;
    for (size_t c = 0; c < k; ++c)
      if (t.classes[c].element_order % chi.values[c].conductor() != 0)
        rep.add("value fields", chi.id + " at " + t.classes[c].name + " lies outside Q(zeta_" +
                std::to_string(t.classes[c].element_order) + ")");
  }
  if (degsq != t.order) rep.add("degrees", "sum of squared degrees is " + degsq.get_str());

  std::vector<std::vector<Cyclotomic>> conj(t.irreducibles.size());
  for (size_t i = 0; i < t.irreducibles.size(); ++i)
    for (const auto& v : t.irreducibles[i].values) conj[i].push_back(v.conj());
  for (size_t i = 0; i < t.irreducibles.size(); ++i)
    for (size_t j = i; j < t.irreducibles.size(); ++j) {
      Cyclotomic s;
      for (size_t c = 0; c < k; ++c)
        if (!t.irreducibles[i].values[c].is_zero() && !conj[j][c].is_zero())
          s += Cyclotomic(t.classes[c].size) * t.irreducibles[i].values[c] * conj[j][c];
      Cyclotomic expect = (i == j) ? Cyclotomic(t.order) : Cyclotomic();
      if (s != expect)
        rep.add("row orthogonality", "<" + t.irreducibles[i].id + "," + t.irreducibles[j].id + "> gives " + (s / Rational(t.order)).str());
    }
  for (size_t c = 0; c < k; ++c)
    for (size_t d = c; d < k; ++d) {
      Cyclotomic s;
      for (size_t i = 0; i < t.irreducibles.size(); ++i)
        if (!t.irreducibles[i].values[c].is_zero() && !conj[i][d].is_zero())
          s += t.irreducibles[i].values[c] * conj[i][d];
      Cyclotomic expect = (c == d && t.classes[c].size > 0) ? Cyclotomic(t.centralizer_order(c)) : Cyclotomic();
      if (s != expect)
        rep.add("column orthogonality", "classes " + t.classes[c].name + "," + t.classes[d].name + " give " + s.str() + ", expected " + expect.str());
    }

  for (size_t c = 0; c < k; ++c) {
    const long o = t.classes[c].element_order;
    for (const auto& [q, target] : t.classes[c].power_maps) {
      if (target < 0 || static_cast<size_t>(target) >= k) {
        rep.add("power maps", std::to_string(q) + "-power of " + t.classes[c].name + " out of range");
        continue;
      }
      if (t.classes[target].element_order != o / std::gcd(o, q))
        rep.add("power maps", std::to_string(q) + "-power of " + t.classes[c].name + " has wrong element order");
      if (o % q == 0) continue;
      for (const auto& chi : t.irreducibles)
        if (chi.values[target] != chi.values[c].galois(q)) {
          rep.add("power maps", chi.id + " is not Galois-compatible with the " + std::to_string(q) + "-power of " + t.classes[c].name);
          break;
        }
    }
  }
  return report;
}

ValidationReport validate_fusion(const FusionMap& f) {
  ValidationReport report;
  Reporter rep(report);
  if (f.map.size() != f.sub->class_count()) {
    rep.add("structure", "fusion map has " + std::to_string(f.map.size()) + " entries for " +
                             std::to_string(f.sub->class_count()) + " classes");
    return report;
  }
  for (int c : f.map)
    if (c < 0 || static_cast<size_t>(c) >= f.big->class_count()) {
      rep.add("structure", "fusion image " + std::to_string(c) + " out of range");
      return report;
    }
  if (f.big->order % f.sub->order != 0) rep.add("orders", "subgroup order does not divide group order");
  if (f.map[0] != 0) rep.add("identity", "identity class does not map to the identity");
  for (size_t d = 0; d < f.map.size(); ++d) {
    const int c = f.map[d];
    const auto& h = f.sub->classes[d];
    const auto& g = f.big->classes[c];
    if (h.element_order != g.element_order)
      rep.add("element orders", h.name + " -> " + g.name);
    if (f.big->centralizer_order(c) % f.sub->centralizer_order(d) != 0)
      rep.add("centralizers", "|C_H(" + h.name + ")| does not divide |C_G(" + g.name + ")|");
    for (const auto& [q, hd] : h.power_maps) {
      auto it = g.power_maps.find(q);
      if (it == g.power_maps.end()) continue;
      if (f.map[hd] != it->second) rep.add("power maps", std::to_string(q) + "-power map does not commute at " + h.name);
    }
  }
  return report;
}

}  // namespace ettk
