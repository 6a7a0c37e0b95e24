#include <algorithm>
#include <cmath>
#include <random>

#include "ettk/error.hpp"
#include "ettk/perm.hpp"

namespace ettk {

namespace {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>;

struct Fq {
  long q;
  long mul(long a, long b) const { return static_cast<long>(static_cast<__int128>(a) * b % q); }
  long add(long a, long b) const { long s = a + b; return s >= q ? s - q : s; }
  long sub(long a, long b) const { long s = a - b; return s < 0 ? s + q : s; }
  long inv(long a) const { return mod_inverse(a, q); }
};

// Rows reduced to echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& m, const Fq& F) {
  std::vector<int> piv;
  if (m.empty()) return piv;
  const int cols = static_cast<int>(m[0].size());
  size_t r = 0;
  for (int c = 0; c < cols && r < m.size(); ++c) {
    size_t s = r;
    while (s < m.size() && m[s][c] == 0) ++s;
    if (s == m.size()) continue;
    std::swap(m[s], m[r]);
    long iv = F.inv(m[r][c]);
    for (auto& x : m[r]) x = F.mul(x, iv);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      long f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    piv.push_back(c);
    ++r;
  }
  m.resize(r);
  return piv;
}

// Basis of {v : A v = 0}.
Mat nullspace(Mat a, const Fq& F) {
  const int n = static_cast<int>(a[0].size());
  std::vector<int> piv = rref(a, F);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  Mat out;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.sub(0, a[r][f]);
    out.push_back(v);
  }
  return out;
}

// Characteristic polynomial via reduction to upper Hessenberg form.
Vec charpoly(Mat h, const Fq& F) {
  const int n = static_cast<int>(h.size());
  for (int c = 0; c + 2 <= n; ++c) {
    int r = c + 1;
    while (r < n && h[r][c] == 0) ++r;
    if (r == n) continue;
    if (r != c + 1) {
      std::swap(h[r], h[c + 1]);
      for (int i = 0; i < n; ++i) std::swap(h[i][r], h[i][c + 1]);
    }
    long iv = F.inv(h[c + 1][c]);
    for (int i = c + 2; i < n; ++i) {
      long f = F.mul(h[i][c], iv);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) h[i][j] = F.sub(h[i][j], F.mul(f, h[c + 1][j]));
      for (int j = 0; j < n; ++j) h[j][c + 1] = F.add(h[j][c + 1], F.mul(f, h[j][i]));
    }
  }
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (int m = 1; m <= n; ++m) {
    Vec cur(m + 1, 0);
    for (int i = 0; i < m; ++i) {
      cur[i + 1] = F.add(cur[i + 1], p[m - 1][i]);
      cur[i] = F.sub(cur[i], F.mul(h[m - 1][m - 1], p[m - 1][i]));
    }
    long prod = 1;
    for (int i = m - 1; i >= 1; --i) {
      prod = F.mul(prod, h[i][i - 1]);
      long coef = F.mul(h[i - 1][m - 1], prod);
      if (coef == 0) continue;
      for (size_t j = 0; j < p[i - 1].size(); ++j) cur[j] = F.sub(cur[j], F.mul(coef, p[i - 1][j]));
    }
    p[m] = cur;
  }
  return p[n];
}

long eval(const Vec& poly, long x, const Fq& F) {
  long r = 0;
  for (size_t i = poly.size(); i-- > 0;) r = F.add(F.mul(r, x), poly[i]);
  return r;
}

long primitive_root(long q) {
  auto fs = prime_divisors(q - 1);
  for (long g = 2;; ++g) {
    bool ok = true;
    for (long r : fs)
      if (mod_pow(g, (q - 1) / r, q) == 1) { ok = false; break; }
    if (ok) return g;
  }
}

}  // namespace

CharacterTable dixon_table(const PermGroup& g, const std::string& name, const DixonOptions& opt) {
  const ConjugacyData cd = conjugacy_data(g);
  const size_t k = cd.classes.size();
  const long order = static_cast<long>(g.order());
  long e = 1;
  for (const auto& c : cd.classes) e = std::lcm(e, c.element_order);
  const double bound = 2.0 * std::sqrt(static_cast<double>(order));
  long q = e + 1;
  while (q <= bound || !is_prime(q)) q += e;
  const Fq F{q};

  // a[j][kk][l] = #{x in C_j : x^-1 g_l in C_kk}; stored per j as k x k matrices.
  std::vector<Mat> A(k, Mat(k, Vec(k, 0)));
  std::vector<size_t> inv_index(g.order());
  for (size_t x = 0; x < g.order(); ++x) inv_index[x] = g.index_of(perm_inv(g.elements[x]));
  for (size_t l = 0; l < k; ++l) {
    const Perm& gl = g.elements[cd.classes[l].rep];
    for (size_t x = 0; x < g.order(); ++x) {
      size_t y = g.index_of(perm_mul(g.elements[inv_index[x]], gl));
      long& cell = A[cd.class_of[x]][cd.class_of[y]][l];
      cell = F.add(cell, 1);
    }
  }

  // Split F_q^k into common eigenlines of the class matrices.
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> coef(0, q - 1);
  Mat identity(k, Vec(k, 0));
  for (size_t i = 0; i < k; ++i) identity[i][i] = 1;
  std::vector<Mat> spaces{identity};
  std::vector<Vec> lines;
  for (int round = 0; !spaces.empty(); ++round) {
    if (round >= opt.max_rounds) fail("LiftFailure", "eigenspace splitting did not converge");
    Mat C(k, Vec(k, 0));
    for (size_t j = 0; j < k; ++j) {
      long r = coef(rng);
      if (r == 0) continue;
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) C[a][b] = F.add(C[a][b], F.mul(r, A[j][a][b]));
    }
    std::vector<Mat> next;
    for (Mat& W : spaces) {
      std::vector<int> piv = rref(W, F);
      const size_t d = W.size();
      Mat R(d, Vec(d, 0));
      for (size_t i = 0; i < d; ++i) {
        Vec cb(k, 0);
        for (size_t a = 0; a < k; ++a)
          for (size_t b = 0; b < k; ++b) cb[a] = F.add(cb[a], F.mul(C[a][b], W[i][b]));
        for (size_t t = 0; t < d; ++t) R[t][i] = cb[piv[t]];
      }
      Vec cp = charpoly(R, F);
      std::vector<long> roots;
      for (long lam = 0; lam < q && roots.size() < d; ++lam)
        if (eval(cp, lam, F) == 0) roots.push_back(lam);
      if (roots.size() <= 1) {
        if (roots.empty()) fail("LiftFailure", "class matrix eigenvalues outside F_q");
        next.push_back(W);
        continue;
      }
      for (long lam : roots) {
        Mat M = R;
        for (size_t i = 0; i < d; ++i) M[i][i] = F.sub(M[i][i], lam);
        Mat sub;
        for (const Vec& c : nullspace(M, F)) {
          Vec v(k, 0);
          for (size_t i = 0; i < d; ++i)
            for (size_t a = 0; a < k; ++a) v[a] = F.add(v[a], F.mul(c[i], W[i][a]));
          sub.push_back(v);
        }
        if (sub.size() == 1) lines.push_back(sub[0]);
        else next.push_back(sub);
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->size() == 1) {
        lines.push_back((*it)[0]);
        it = next.erase(it);
      } else {
        ++it;
      }
    }
    spaces = std::move(next);
  }
  if (lines.size() != k) fail("LiftFailure", "wrong number of eigenlines");

  std::vector<int> inverse_class(k);
  for (size_t l = 0; l < k; ++l)
    inverse_class[l] = cd.class_of[g.index_of(perm_inv(g.elements[cd.classes[l].rep]))];
  std::vector<std::vector<int>> power_class(k);
  for (size_t l = 0; l < k; ++l) {
    const Perm& rep = g.elements[cd.classes[l].rep];
    Perm cur = perm_identity(g.degree);
    for (long t = 0; t < cd.classes[l].element_order; ++t) {
      power_class[l].push_back(cd.class_of[g.index_of(cur)]);
      cur = perm_mul(cur, rep);
    }
  }
  const long z_e = mod_pow(primitive_root(q), (q - 1) / e, q);
  const long root_bound = static_cast<long>(std::sqrt(static_cast<double>(order)));

  std::vector<Irreducible> irr;
  for (Vec w : lines) {
    long s = F.inv(w[0]);
    for (auto& x : w) x = F.mul(x, s);
    long t = 0;
    for (size_t l = 0; l < k; ++l)
      t = F.add(t, F.mul(F.mul(w[l], w[inverse_class[l]]), F.inv(static_cast<long>(cd.classes[l].size % q))));
    long target = F.mul(order % q, F.inv(t));
    long deg = 0;
    for (long d = 1; d <= root_bound + 1; ++d)
      if (F.mul(d, d) == target) { deg = d; break; }
    if (deg == 0) fail("LiftFailure", "no integral degree for an eigenline");
    Vec val(k);
    for (size_t l = 0; l < k; ++l)
      val[l] = F.mul(F.mul(w[l], deg % q), F.inv(static_cast<long>(cd.classes[l].size % q)));
    Irreducible chi;
    for (size_t l = 0; l < k; ++l) {
      const long o = cd.classes[l].element_order;
      const long z = mod_pow(z_e, e / o, q);
      const long zinv = F.inv(z);
      const long oinv = F.inv(o % q);
      std::vector<std::pair<long, Rational>> terms;
      long total = 0;
      for (long i = 0; i < o; ++i) {
        long acc = 0, step = mod_pow(zinv, i, q), pw = 1;
        for (long t2 = 0; t2 < o; ++t2) {
          acc = F.add(acc, F.mul(val[power_class[l][t2]], pw));
          pw = F.mul(pw, step);
        }
        long mi = F.mul(acc, oinv);
        if (mi > deg) fail("LiftFailure", "eigenvalue multiplicity exceeds degree");
        total += mi;
        if (mi) terms.emplace_back(i, Rational(mi));
      }
      if (total != deg) fail("LiftFailure", "eigenvalue multiplicities do not sum to the degree");
      chi.values.push_back(Cyclotomic::from_terms(o, terms));
    }
    irr.push_back(std::move(chi));
  }
  auto is_trivial = [](const Irreducible& c) {
    return std::all_of(c.values.begin(), c.values.end(), [](const Cyclotomic& v) { return v == Cyclotomic(1L); });
  };
  std::sort(irr.begin(), irr.end(), [&](const Irreducible& a, const Irreducible& b) {
    if (a.values[0] != b.values[0]) return a.values[0] < b.values[0];
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    return a.values < b.values;
  });

  CharacterTable t;
  t.name = name;
  t.order = Integer(std::to_string(order));
  for (size_t l = 0; l < k; ++l) {
    ClassInfo ci;
    ci.name = cd.classes[l].name;
    ci.size = Integer(std::to_string(cd.classes[l].size));
    ci.element_order = cd.classes[l].element_order;
    for (const auto& [pr, pm] : cd.power_maps) ci.power_maps[pr] = pm[l];
    t.classes.push_back(ci);
  }
  for (size_t i = 0; i < irr.size(); ++i) {
    irr[i].id = "chi_" + std::to_string(i + 1);
    t.irreducibles.push_back(std::move(irr[i]));
  }
  for (size_t l = 0; l < k; ++l)
    if (cd.classes[l].size == 1) t.center.push_back(static_cast<int>(l));
  if (t.center.size() <= 1) t.center.clear();
  return t;
}

}  // namespace ettk
