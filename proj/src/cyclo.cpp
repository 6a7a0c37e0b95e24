#include "ettk/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "ettk/error.hpp"

namespace ettk {

namespace {

using Poly = std::vector<Integer>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact quotient of a by the monic polynomial b.
Poly exact_div(Poly a, const Poly& b) {
  const size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (size_t i = 0; i < db; ++i)
    if (a[i] != 0) fail("InternalError", "inexact cyclotomic quotient");
  trim(q);
  return q;
}

std::recursive_mutex poly_mutex;
std::map<long, Poly> poly_cache;

// Arithmetic context for Q(zeta_n).
struct Field {
  long n;
  long phi;
  // red[k] = power-basis coordinates of x^k mod Phi_n, for 0 <= k < n.
  std::vector<std::vector<long>> red;
};

std::mutex field_mutex;
std::map<long, std::unique_ptr<Field>> field_cache;

std::unique_ptr<Field> build_field(long n) {
  const Poly& phi_poly = cyclotomic_polynomial(n);
  auto f = std::make_unique<Field>();
  f->n = n;
  f->phi = static_cast<long>(phi_poly.size()) - 1;
  f->red.assign(n, std::vector<long>(f->phi, 0));
  std::vector<Integer> cur(f->phi, 0);
  for (long k = 0; k < n; ++k) {
    if (k < f->phi) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[k] = 1;
    } else {
      Integer top = cur[f->phi - 1];
      for (long i = f->phi - 1; i > 0; --i) cur[i] = cur[i - 1] - top * phi_poly[i];
      cur[0] = -top * phi_poly[0];
    }
    for (long i = 0; i < f->phi; ++i) {
      if (!cur[i].fits_slong_p()) fail("Overflow", "power table of conductor " + std::to_string(n));
      f->red[k][i] = cur[i].get_si();
    }
  }
  return f;
}

const Field& field(long n) {
  std::lock_guard<std::mutex> lock(field_mutex);
  auto it = field_cache.find(n);
  if (it != field_cache.end()) return *it->second;
  auto& slot = field_cache[n];
  slot = build_field(n);
  return *slot;
}

void addmul(std::vector<Integer>& acc, const Integer& c, const std::vector<long>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] > 0)
      mpz_addmul_ui(acc[i].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(v[i]));
    else
      mpz_submul_ui(acc[i].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-v[i]));
  }
}

// Left inverse of the embedding Q(zeta_m) -> Q(zeta_n), n = m*q with q not
// dividing m, restricted to a set of pivot rows: y = M * v[piv] / D.
struct Projection {
  long phi_n, phi_m;
  std::vector<long> piv;
  std::vector<std::vector<Integer>> M;
  Integer D;
  std::vector<std::vector<long>> E;  // E[row][col], phi_n x phi_m
};

std::mutex proj_mutex;
std::map<std::pair<long, long>, std::unique_ptr<Projection>> proj_cache;

std::unique_ptr<Projection> build_projection(long n, long q) {
  const long m = n / q;
  const Field& fn = field(n);
  const Field& fm = field(m);
  auto pr = std::make_unique<Projection>();
  pr->phi_n = fn.phi;
  pr->phi_m = fm.phi;
  pr->E.assign(fn.phi, std::vector<long>(fm.phi, 0));
  for (long j = 0; j < fm.phi; ++j) {
    const auto& col = fn.red[(j * q) % n];
    for (long i = 0; i < fn.phi; ++i) pr->E[i][j] = col[i];
  }
  // Pivot rows: greedy row selection by elimination on E.
  std::vector<std::vector<Rational>> basis;
  std::vector<long> basis_lead;
  for (long i = 0; i < fn.phi && static_cast<long>(pr->piv.size()) < fm.phi; ++i) {
    std::vector<Rational> r(fm.phi);
    for (long j = 0; j < fm.phi; ++j) r[j] = pr->E[i][j];
    for (size_t b = 0; b < basis.size(); ++b) {
      long l = basis_lead[b];
      if (r[l] == 0) continue;
      Rational c = r[l] / basis[b][l];
      for (long j = 0; j < fm.phi; ++j) r[j] -= c * basis[b][j];
    }
    auto lead = std::find_if(r.begin(), r.end(), [](const Rational& x) { return x != 0; });
    if (lead == r.end()) continue;
    basis_lead.push_back(lead - r.begin());
    basis.push_back(std::move(r));
    pr->piv.push_back(i);
  }
  if (static_cast<long>(pr->piv.size()) != fm.phi) fail("InternalError", "embedding not injective");
  // Invert the square submatrix by Gauss-Jordan.
  const long k = fm.phi;
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k));
  for (long i = 0; i < k; ++i) {
    for (long j = 0; j < k; ++j) a[i][j] = pr->E[pr->piv[i]][j];
    a[i][k + i] = 1;
  }
  for (long c = 0; c < k; ++c) {
    long r = c;
    while (a[r][c] == 0) ++r;
    std::swap(a[r], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (long i = 0; i < k; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (long j = 0; j < 2 * k; ++j) a[i][j] -= f * a[c][j];
    }
  }
  pr->D = 1;
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) mpz_lcm(pr->D.get_mpz_t(), pr->D.get_mpz_t(), a[i][k + j].get_den_mpz_t());
  pr->M.assign(k, std::vector<Integer>(k));
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) {
      Rational v = a[i][k + j] * pr->D;
      pr->M[i][j] = v.get_num();
    }
  return pr;
}

const Projection& projection(long n, long q) {
  {
    std::lock_guard<std::mutex> lock(proj_mutex);
    auto it = proj_cache.find({n, q});
    if (it != proj_cache.end()) return *it->second;
  }
  auto built = build_projection(n, q);
  std::lock_guard<std::mutex> lock(proj_mutex);
  auto& slot = proj_cache[{n, q}];
  if (!slot) slot = std::move(built);
  return *slot;
}

Integer lcm_den(const std::vector<Rational>& v) {
  Integer d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long n) {
  if (n < 1) fail("DomainError", "conductor must be positive");
  std::lock_guard<std::recursive_mutex> lock(poly_mutex);
  auto it = poly_cache.find(n);
  if (it != poly_cache.end()) return it->second;
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = exact_div(p, cyclotomic_polynomial(d));
  return poly_cache[n] = p;
}

Cyclotomic::Cyclotomic() : n_(1), num_{Integer(0)}, den_(1) {}
Cyclotomic::Cyclotomic(long v) : n_(1), num_{Integer(v)}, den_(1) {}
Cyclotomic::Cyclotomic(const Integer& v) : n_(1), num_{v}, den_(1) {}
Cyclotomic::Cyclotomic(const Rational& v) : n_(1), num_{v.get_num()}, den_(v.get_den()) {}

Cyclotomic::Cyclotomic(long n, std::vector<Integer> num, Integer den)
    : n_(n), num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
  return from_terms(n, {{k, Rational(1)}});
}

Cyclotomic Cyclotomic::from_terms(long n, const std::vector<std::pair<long, Rational>>& terms) {
  if (n < 1) fail("DomainError", "conductor must be positive");
  std::vector<Rational> raw(n);
  for (const auto& [e, c] : terms) raw[pos_mod(e, n)] += c;
  return from_coeffs(n, raw);
}

Cyclotomic Cyclotomic::from_coeffs(long n, const std::vector<Rational>& coeffs) {
  if (n < 1) fail("DomainError", "conductor must be positive");
  const Field& f = field(n);
  Integer den = lcm_den(coeffs);
  std::vector<Integer> acc(f.phi, 0);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    Integer c = coeffs[k].get_num() * (den / coeffs[k].get_den());
    addmul(acc, c, f.red[k % n]);
  }
  return Cyclotomic(n, std::move(acc), std::move(den));
}

std::vector<Rational> Cyclotomic::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (const auto& c : num_) {
    Rational r(c, den_);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

bool Cyclotomic::is_zero() const { return n_ == 1 && num_[0] == 0; }

Rational Cyclotomic::rational() const {
  if (n_ != 1) fail("DomainError", "value is not rational: " + str());
  Rational r(num_[0], den_);
  r.canonicalize();
  return r;
}

std::optional<Integer> Cyclotomic::as_integer() const {
  if (n_ != 1 || den_ != 1) return std::nullopt;
  return num_[0];
}

void Cyclotomic::normalize_content() {
  Integer g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  bool zero = std::all_of(num_.begin(), num_.end(), [](const Integer& c) { return c == 0; });
  if (zero) {
    n_ = 1;
    num_.assign(1, Integer(0));
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void Cyclotomic::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  normalize_content();
  bool lowered = true;
  while (lowered && n_ > 1) {
    lowered = false;
    for (long q : prime_divisors(n_)) {
      const long m = n_ / q;
      const long phi_m = euler_phi(m);
      std::vector<Integer> y(phi_m, 0);
      if (m % q == 0) {
        // Phi_n(x) = Phi_m(x^q): membership is a support condition.
        bool ok = true;
        for (size_t i = 0; i < num_.size() && ok; ++i)
          if (i % q != 0 && num_[i] != 0) ok = false;
        if (!ok) continue;
        for (long j = 0; j < phi_m; ++j) y[j] = num_[j * q];
      } else {
        const Projection& pr = projection(n_, q);
        for (long i = 0; i < phi_m; ++i)
          for (long j = 0; j < phi_m; ++j) y[i] += pr.M[i][j] * num_[pr.piv[j]];
        bool ok = true;
        for (long r = 0; r < pr.phi_n && ok; ++r) {
          Integer s = 0;
          for (long j = 0; j < phi_m; ++j)
            if (pr.E[r][j] != 0) s += pr.E[r][j] * y[j];
          if (s != pr.D * num_[r]) ok = false;
        }
        if (!ok) continue;
        den_ *= pr.D;
      }
      n_ = m;
      num_ = std::move(y);
      normalize_content();
      lowered = true;
      break;
    }
  }
}

std::vector<Integer> Cyclotomic::numerators_in(long n) const {
  if (n % n_ != 0) fail("DomainError", "conductor " + std::to_string(n_) + " does not divide " + std::to_string(n));
  if (n == n_) return num_;
  const Field& f = field(n);
  const long step = n / n_;
  std::vector<Integer> out(f.phi, 0);
  for (size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) addmul(out, num_[i], f.red[(static_cast<long>(i) * step) % n]);
  return out;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& b) {
  if (b.is_zero()) return *this;
  const long L = std::lcm(n_, b.n_);
  std::vector<Integer> x = numerators_in(L);
  std::vector<Integer> y = b.numerators_in(L);
  for (size_t i = 0; i < x.size(); ++i) x[i] = x[i] * b.den_ + y[i] * den_;
  *this = Cyclotomic(L, std::move(x), den_ * b.den_);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& b) { return *this += -b; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& b) {
  if (b.n_ == 1 || n_ == 1) {
    const Cyclotomic& s = (b.n_ == 1) ? b : *this;
    const Cyclotomic& v = (b.n_ == 1) ? *this : b;
    std::vector<Integer> x = v.num_;
    for (auto& c : x) c *= s.num_[0];
    *this = Cyclotomic(v.n_, std::move(x), v.den_ * s.den_);
    return *this;
  }
  const long L = std::lcm(n_, b.n_);
  const Field& f = field(L);
  std::vector<Integer> x = numerators_in(L);
  std::vector<Integer> y = b.numerators_in(L);
  std::vector<Integer> raw(2 * f.phi - 1, 0);
  for (long i = 0; i < f.phi; ++i) {
    if (x[i] == 0) continue;
    for (long j = 0; j < f.phi; ++j)
      if (y[j] != 0) mpz_addmul(raw[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  std::vector<Integer> acc(raw.begin(), raw.begin() + f.phi);
  for (long k = f.phi; k < 2 * f.phi - 1; ++k)
    if (raw[k] != 0) addmul(acc, raw[k], f.red[k % L]);
  *this = Cyclotomic(L, std::move(acc), den_ * b.den_);
  return *this;
}

Cyclotomic Cyclotomic::operator/(const Rational& r) const {
  if (r == 0) fail("DomainError", "division by zero");
  std::vector<Integer> x = num_;
  for (auto& c : x) c *= r.get_den();
  return Cyclotomic(n_, std::move(x), den_ * r.get_num());
}

Cyclotomic Cyclotomic::pow(unsigned long k) const {
  Cyclotomic result(1L), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Cyclotomic Cyclotomic::galois(long j) const {
  if (std::gcd(pos_mod(j, n_), n_) != 1 && n_ > 1)
    fail("NonCoprimeExponent", "exponent " + std::to_string(j) + " not coprime to conductor " + std::to_string(n_));
  if (n_ == 1) return *this;
  const Field& f = field(n_);
  std::vector<Integer> acc(f.phi, 0);
  for (size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) addmul(acc, num_[i], f.red[pos_mod(static_cast<long>(i) * j, n_)]);
  return Cyclotomic(n_, std::move(acc), den_);
}

bool Cyclotomic::abs_is_one() const { return *this * conj() == Cyclotomic(1L); }

bool Cyclotomic::operator==(const Cyclotomic& b) const {
  return n_ == b.n_ && den_ == b.den_ && num_ == b.num_;
}

std::strong_ordering Cyclotomic::operator<=>(const Cyclotomic& b) const {
  if (n_ != b.n_) return n_ <=> b.n_;
  for (size_t i = 0; i < num_.size(); ++i) {
    int c = cmp(num_[i] * b.den_, b.num_[i] * den_);
    if (c != 0) return c <=> 0;
  }
  return std::strong_ordering::equal;
}

std::string Cyclotomic::str() const {
  if (n_ == 1) return rational().get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    Rational c(num_[i], den_);
    c.canonicalize();
    if (!first) os << (c > 0 ? "+" : "-");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "z" << n_;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

Cyclotomic cyc_arith(const Cyclotomic& a, const Cyclotomic& b, CycOp kind) {
  switch (kind) {
    case CycOp::add: return a + b;
    case CycOp::sub: return a - b;
    case CycOp::mul: return a * b;
  }
  fail("DomainError", "unknown operation");
}

Cyclotomic cyc_galois(const Cyclotomic& a, long j) { return a.galois(j); }

Cyclotomic cyc_canonical(long n, const std::vector<Rational>& coeffs) {
  return Cyclotomic::from_coeffs(n, coeffs);
}

std::optional<Integer> cyc_as_rational_integer(const Cyclotomic& a) { return a.as_integer(); }

bool cyc_abs_is_one(const Cyclotomic& a) { return a.abs_is_one(); }

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  auto valid = [](const std::string& x) {
    size_t i = (!x.empty() && x[0] == '-') ? 1 : 0;
    return i < x.size() && std::all_of(x.begin() + i, x.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = t.find('/');
  std::string a = t.substr(0, slash);
  std::string b = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid(a) || !valid(b) || b[0] == '-') fail("ParseError", "bad rational literal '" + s + "'");
  Integer den(b);
  if (den == 0) fail("ParseError", "zero denominator in '" + s + "'");
  Rational r(Integer(a), den);
  r.canonicalize();
  return r;
}

namespace {

Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  fail("ParseError", "expected a rational literal, got " + j.dump());
}

}  // namespace

Cyclotomic parse_cyclotomic(const nlohmann::json& j) {
  if (!j.is_object()) return Cyclotomic(json_rational(j));
  if (!j.contains("n") || !j.contains("terms") || !j["terms"].is_array())
    fail("ParseError", "cyclotomic literal needs \"n\" and \"terms\": " + j.dump());
  long n = j["n"].get<long>();
  if (n < 1) fail("ParseError", "conductor must be positive: " + j.dump());
  std::vector<std::pair<long, Rational>> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2) fail("ParseError", "bad term " + t.dump());
    terms.emplace_back(t[0].get<long>(), json_rational(t[1]));
  }
  return Cyclotomic::from_terms(n, terms);
}

nlohmann::json cyclotomic_to_json(const Cyclotomic& a) {
  if (a.is_rational()) return a.rational().get_str();
  nlohmann::json terms = nlohmann::json::array();
  auto c = a.coeffs();
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) terms.push_back({static_cast<long>(i), c[i].get_str()});
  return {{"n", a.conductor()}, {"terms", terms}};
}

}  // namespace ettk
