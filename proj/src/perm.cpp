#include "ettk/perm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ettk/error.hpp"

namespace ettk {

size_t PermHash::operator()(const Perm& p) const noexcept {
  uint64_t h = 1469598103934665603ull;
  for (uint32_t x : p) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm perm_inv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<uint32_t>(i);
  return r;
}

Perm perm_identity(size_t degree) {
  Perm r(degree);
  std::iota(r.begin(), r.end(), 0u);
  return r;
}

Perm perm_pow(const Perm& a, long k) {
  Perm base = k < 0 ? perm_inv(a) : a;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  Perm r = perm_identity(a.size());
  while (e > 0) {
    if (e & 1) r = perm_mul(r, base);
    e >>= 1;
    if (e) base = perm_mul(base, base);
  }
  return r;
}

long perm_order(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  long ord = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

size_t PermGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) fail("NotInGroup", "permutation is not a group element");
  return it->second;
}

PermGroup enumerate_group(size_t degree, const std::vector<Perm>& gens, const GroupOptions& opt) {
  PermGroup g;
  g.degree = degree;
  for (const auto& x : gens) {
    if (x.size() != degree) fail("InvalidGenerator", "generator has wrong degree");
    std::vector<bool> hit(degree, false);
    for (uint32_t v : x) {
      if (v >= degree || hit[v]) fail("InvalidGenerator", "generator is not a bijection");
      hit[v] = true;
    }
  }
  g.generators = gens;
  Perm id = perm_identity(degree);
  g.elements.push_back(id);
  g.index_.emplace(id, 0);
  for (size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& s : gens) {
      Perm y = perm_mul(g.elements[head], s);
      if (g.index_.count(y)) continue;
      if (g.elements.size() >= opt.order_cap)
        fail("CapExceeded", "group order exceeds cap " + std::to_string(opt.order_cap));
      g.index_.emplace(y, static_cast<uint32_t>(g.elements.size()));
      g.elements.push_back(std::move(y));
    }
  }
  return g;
}

PermGroup generators_from_json(const nlohmann::json& j, const GroupOptions& opt) {
  if (!j.contains("degree") || !j.contains("generators"))
    fail("ParseError", "generator file needs \"degree\" and \"generators\"");
  size_t degree = j["degree"].get<size_t>();
  std::vector<Perm> gens;
  for (const auto& row : j["generators"]) gens.push_back(row.get<Perm>());
  return enumerate_group(degree, gens, opt);
}

PermGroup load_generators(const std::string& path, const GroupOptions& opt) {
  return generators_from_json(read_json_file(path), opt);
}

ConjugacyData conjugacy_data(const PermGroup& g) {
  const size_t n = g.order();
  std::vector<int> raw_class(n, -1);
  struct Raw {
    size_t rep;
    size_t size;
    long order;
  };
  std::vector<Raw> raw;
  std::vector<Perm> gen_inv;
  for (const auto& s : g.generators) gen_inv.push_back(perm_inv(s));
  for (size_t x = 0; x < n; ++x) {
    if (raw_class[x] >= 0) continue;
    const int id = static_cast<int>(raw.size());
    std::vector<size_t> orbit{x};
    raw_class[x] = id;
    for (size_t h = 0; h < orbit.size(); ++h) {
      for (size_t s = 0; s < g.generators.size(); ++s) {
        size_t y = g.index_of(perm_mul(perm_mul(gen_inv[s], g.elements[orbit[h]]), g.generators[s]));
        if (raw_class[y] < 0) {
          raw_class[y] = id;
          orbit.push_back(y);
        }
      }
    }
    size_t rep = *std::min_element(orbit.begin(), orbit.end(), [&](size_t a, size_t b) {
      return g.elements[a] < g.elements[b];
    });
    raw.push_back({rep, orbit.size(), perm_order(g.elements[x])});
  }
  std::vector<int> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    const Raw &x = raw[a], &y = raw[b];
    if (x.order != y.order) return x.order < y.order;
    if (x.size != y.size) return x.size < y.size;
    return g.elements[x.rep] < g.elements[y.rep];
  });
  std::vector<int> new_id(raw.size());
  for (size_t i = 0; i < perm.size(); ++i) new_id[perm[i]] = static_cast<int>(i);

  ConjugacyData cd;
  cd.class_of.resize(n);
  for (size_t x = 0; x < n; ++x) cd.class_of[x] = new_id[raw_class[x]];
  std::map<long, int> letter;
  for (int i : perm) {
    const Raw& r = raw[i];
    int k = letter[r.order]++;
    std::string suffix;
    do {
      suffix.insert(suffix.begin(), static_cast<char>('a' + k % 26));
      k = k / 26 - 1;
    } while (k >= 0);
    cd.classes.push_back({r.rep, r.size, r.order, std::to_string(r.order) + suffix});
    cd.centralizer_orders.push_back(n / r.size);
  }
  for (long q : prime_divisors(static_cast<long>(n))) {
    std::vector<int> pm;
    for (const auto& c : cd.classes) pm.push_back(cd.class_of[g.index_of(perm_pow(g.elements[c.rep], q))]);
    cd.power_maps[q] = pm;
  }
  return cd;
}

}  // namespace ettk
