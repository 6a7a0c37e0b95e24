#include "ettk/abelian.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ettk/error.hpp"
#include "ettk/numtheory.hpp"

namespace ettk {

namespace {

std::map<long, std::vector<int>> primary_of(const std::vector<long>& orders) {
  std::map<long, std::vector<int>> parts;
  for (long d : orders) {
    if (d < 1) fail("DomainError", "cyclic order must be positive");
    for (long q : prime_divisors(d)) {
      int e = 0;
      for (long m = d; m % q == 0; m /= q) ++e;
      parts[q].push_back(e);
    }
  }
  for (auto& [q, es] : parts) std::sort(es.rbegin(), es.rend());
  return parts;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// All partitions of n into parts <= cap, decreasing.
void partitions(int n, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, cap); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

InvariantFactors from_primary(const std::map<long, std::vector<int>>& parts) {
  size_t len = 0;
  for (const auto& [q, es] : parts) len = std::max(len, es.size());
  InvariantFactors f(len, 1);
  for (const auto& [q, es] : parts)
    for (size_t i = 0; i < es.size(); ++i) f[len - 1 - i] *= ipow(q, es[i]);
  return f;
}

}  // namespace

InvariantFactors normalize_abelian(const std::vector<long>& cyclic_orders) {
  return from_primary(primary_of(cyclic_orders));
}

long abelian_order(const InvariantFactors& f) {
  long n = 1;
  for (long d : f) n *= d;
  return n;
}

std::map<long, std::vector<int>> primary_partitions(const InvariantFactors& f) { return primary_of(f); }

bool abelian_embeds(const InvariantFactors& x, const InvariantFactors& t) {
  auto px = primary_of(x), pt = primary_of(t);
  for (const auto& [q, ex] : px) {
    auto it = pt.find(q);
    if (it == pt.end() || it->second.size() < ex.size()) return false;
    for (size_t i = 0; i < ex.size(); ++i)
      if (ex[i] > it->second[i]) return false;
  }
  return true;
}

std::vector<InvariantFactors> abelian_groups_of_order(long n) {
  if (n < 1) fail("DomainError", "group order must be positive");
  std::vector<std::pair<long, std::vector<std::vector<int>>>> choices;
  for (long q : prime_divisors(n)) {
    int e = 0;
    for (long m = n; m % q == 0; m /= q) ++e;
    std::vector<int> cur;
    std::vector<std::vector<int>> ps;
    partitions(e, e, cur, ps);
    choices.emplace_back(q, std::move(ps));
  }
  std::vector<InvariantFactors> out;
  std::map<long, std::vector<int>> pick;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == choices.size()) {
      out.push_back(from_primary(pick));
      return;
    }
    for (const auto& part : choices[i].second) {
      pick[choices[i].first] = part;
      rec(i + 1);
    }
    pick.erase(choices[i].first);
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string abelian_str(const InvariantFactors& f) {
  if (f.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "+Z/" : "Z/") + std::to_string(f[i]);
  return s;
}

InvariantFactors parse_abelian(const std::string& s) {
  std::vector<long> orders;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.rfind("Z/", 0) == 0) tok = tok.substr(2);
    try {
      size_t used = 0;
      long d = std::stol(tok, &used);
      if (used != tok.size() || d < 1) throw std::invalid_argument(tok);
      orders.push_back(d);
    } catch (const std::logic_error&) {
      fail("ParseError", "bad cyclic order '" + tok + "' in '" + s + "'");
    }
  }
  return normalize_abelian(orders);
}

}  // namespace ettk
