#include "ettk/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "ettk/error.hpp"

namespace ettk {

namespace fp {

namespace {

long mulm(long a, long b, long p) {
  return static_cast<long>(static_cast<__int128>(a) * b % p);
}

long inv(long a, long p) { return mod_inverse(a, p); }

// How many products of residues fit in a 64-bit accumulator (at least one
// reduced residue is already present).
uint64_t lazy_room(long p) {
  if (p >= (1L << 31)) return 0;
  const uint64_t q = static_cast<uint64_t>(p - 1);
  return q == 0 ? UINT64_MAX : (UINT64_MAX - q) / (q * q);
}

}  // namespace

FpPoly trim(FpPoly a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  if (a.empty()) a.push_back(0);
  return a;
}

int degree(const FpPoly& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

FpPoly add(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    long x = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = pos_mod(x, p);
  }
  return trim(r);
}

FpPoly sub(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    long x = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = pos_mod(x, p);
  }
  return trim(r);
}

FpPoly mul(const FpPoly& a, const FpPoly& b, long p) {
  if (degree(a) < 0 || degree(b) < 0) return {0};
  const uint64_t room = lazy_room(p);
  if (room < 2) {
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    }
    return trim(r);
  }
  std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
  const uint64_t up = static_cast<uint64_t>(p);
  uint64_t pending = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (++pending == room) {
      for (auto& v : acc) v %= up;
      pending = 1;
    }
    const uint64_t ai = static_cast<uint64_t>(a[i]);
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += ai * static_cast<uint64_t>(b[j]);
  }
  FpPoly r(acc.size());
  for (size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<long>(acc[k] % up);
  return trim(r);
}

namespace {

void divmod(const FpPoly& a, const FpPoly& m, long p, FpPoly* q, FpPoly* r) {
  const int dm = degree(m);
  if (dm < 0) fail("DomainError", "polynomial division by zero");
  FpPoly rem = trim(a);
  int da = degree(rem);
  FpPoly quot(std::max(da - dm + 1, 1), 0);
  const long li = inv(m[dm], p);
  if (lazy_room(p) > static_cast<uint64_t>(dm) + 1) {
    // Subtract f*m as f*(p - m) so entries stay non-negative; each entry
    // receives at most dm + 1 such terms.
    const uint64_t up = static_cast<uint64_t>(p);
    std::vector<uint64_t> acc(rem.begin(), rem.end());
    std::vector<uint64_t> neg(dm + 1);
    for (int j = 0; j <= dm; ++j) neg[j] = (up - static_cast<uint64_t>(m[j])) % up;
    for (int d = da; d >= dm; --d) {
      const uint64_t c = acc[d] % up;
      if (c == 0) continue;
      const uint64_t f = c * static_cast<uint64_t>(li) % up;
      quot[d - dm] = static_cast<long>(f);
      uint64_t* row = acc.data() + (d - dm);
      for (int j = 0; j <= dm; ++j) row[j] += f * neg[j];
    }
    for (size_t k = 0; k < rem.size(); ++k) rem[k] = static_cast<long>(acc[k] % up);
  } else {
    for (int d = da; d >= dm; --d) {
      long c = rem[d];
      if (c == 0) continue;
      long f = mulm(c, li, p);
      quot[d - dm] = f;
      for (int j = 0; j <= dm; ++j) rem[d - dm + j] = pos_mod(rem[d - dm + j] - mulm(f, m[j], p), p);
    }
  }
  if (q) *q = trim(quot);
  if (r) *r = trim(rem);
}

}  // namespace

FpPoly rem(const FpPoly& a, const FpPoly& m, long p) {
  FpPoly r;
  divmod(a, m, p, nullptr, &r);
  return r;
}

FpPoly quo(const FpPoly& a, const FpPoly& m, long p) {
  FpPoly q;
  divmod(a, m, p, &q, nullptr);
  return q;
}

FpPoly monic(const FpPoly& a, long p) {
  int d = degree(a);
  if (d < 0) return {0};
  long li = inv(a[d], p);
  FpPoly r(d + 1);
  for (int i = 0; i <= d; ++i) r[i] = mulm(a[i], li, p);
  return r;
}

FpPoly gcd(FpPoly a, FpPoly b, long p) {
  a = trim(a);
  b = trim(b);
  while (degree(b) >= 0) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

FpPoly powmod(const FpPoly& a, const Integer& e, const FpPoly& m, long p) {
  FpPoly result{1};
  FpPoly base = rem(a, m, p);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return result;
}

namespace {

FpPoly reduce_integer_poly(const std::vector<Integer>& f, long p) {
  FpPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Integer t = f[i] % p;
    if (t < 0) t += p;
    r[i] = t.get_si();
  }
  return trim(r);
}

// Splits a squarefree product of irreducibles of common degree d.
void equal_degree_split(const FpPoly& f, int d, long p, std::vector<FpPoly>& out) {
  const int n = degree(f);
  if (n == d) {
    out.push_back(monic(f, p));
    return;
  }
  Integer q = 1;
  for (int i = 0; i < d; ++i) q *= p;
  // Fixed seed keeps the factor list reproducible.
  std::mt19937_64 rng(0x5eed + 7919 * static_cast<uint64_t>(n) + static_cast<uint64_t>(d));
  std::uniform_int_distribution<long> coeff(0, p - 1);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    FpPoly a(n);
    for (auto& c : a) c = coeff(rng);
    a = trim(a);
    if (degree(a) < 1) continue;
    FpPoly h;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      FpPoly t = rem(a, f, p);
      h = t;
      for (int i = 1; i < d; ++i) {
        t = rem(mul(t, t, p), f, p);
        h = add(h, t, p);
      }
    } else {
      h = sub(powmod(a, (q - 1) / 2, f, p), FpPoly{1}, p);
    }
    FpPoly g = gcd(f, h, p);
    int dg = degree(g);
    if (dg > 0 && dg < n) {
      equal_degree_split(g, d, p, out);
      equal_degree_split(quo(f, g, p), d, p, out);
      return;
    }
  }
  fail("InternalError", "equal-degree splitting exhausted its candidates");
}

}  // namespace

std::vector<FpPoly> cyclotomic_factors(long m, long p) {
  if (!is_prime(p)) fail("DomainError", std::to_string(p) + " is not prime");
  if (m % p == 0) fail("DomainError", "p divides m");
  static std::mutex mu;
  static std::map<std::pair<long, long>, std::vector<FpPoly>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({m, p});
    if (it != cache.end()) return it->second;
  }
  FpPoly f = reduce_integer_poly(cyclotomic_polynomial(m), p);
  std::vector<FpPoly> out;
  // Distinct-degree stage: gcd with x^(p^k) - x.
  FpPoly h{0, 1};
  const FpPoly x{0, 1};
  for (int k = 1; degree(f) >= 2 * k; ++k) {
    h = powmod(h, Integer(p), f, p);
    FpPoly g = gcd(f, sub(h, x, p), p);
    if (degree(g) > 0) {
      equal_degree_split(g, k, p, out);
      f = quo(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.push_back(monic(f, p));
  std::sort(out.begin(), out.end());
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(m, p), out);
  return out;
}

}  // namespace fp

FiniteFieldElement::FiniteFieldElement(long p, FpPoly modulus, FpPoly coords)
    : p_(p), modulus_(std::move(modulus)) {
  FpPoly r = fp::rem(coords, modulus_, p_);
  coords_.assign(fp::degree(modulus_), 0);
  for (size_t i = 0; i < r.size() && i < coords_.size(); ++i) coords_[i] = r[i];
}

bool FiniteFieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](long c) { return c == 0; });
}

void FiniteFieldElement::check_same(const FiniteFieldElement& b) const {
  if (p_ != b.p_ || modulus_ != b.modulus_) fail("FieldMismatch", "elements of different finite fields");
}

FiniteFieldElement FiniteFieldElement::operator+(const FiniteFieldElement& b) const {
  check_same(b);
  return {p_, modulus_, fp::add(coords_, b.coords_, p_)};
}

FiniteFieldElement FiniteFieldElement::operator-(const FiniteFieldElement& b) const {
  check_same(b);
  return {p_, modulus_, fp::sub(coords_, b.coords_, p_)};
}

FiniteFieldElement FiniteFieldElement::operator*(const FiniteFieldElement& b) const {
  check_same(b);
  return {p_, modulus_, fp::mul(coords_, b.coords_, p_)};
}

bool FiniteFieldElement::operator==(const FiniteFieldElement& b) const {
  return p_ == b.p_ && modulus_ == b.modulus_ && coords_ == b.coords_;
}

std::string FiniteFieldElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = coords_.size(); i-- > 0;) {
    if (coords_[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || coords_[i] != 1) os << coords_[i];
    if (i > 0) os << (coords_[i] != 1 ? "*t" : "t");
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

long p_prime_part(long N, long p, long* ppart) {
  long m = N, pp = 1;
  while (m % p == 0) {
    m /= p;
    pp *= p;
  }
  if (ppart) *ppart = pp;
  return m;
}

}  // namespace

size_t ResidueMap::choice_count(long N, long p) {
  long m = p_prime_part(N, p, nullptr);
  if (m == 1) return 1;
  return fp::cyclotomic_factors(m, p).size();
}

ResidueMap::ResidueMap(long N, long p, size_t ideal_choice) : N_(N), p_(p) {
  if (N < 1) fail("DomainError", "conductor must be positive");
  if (!is_prime(p)) fail("DomainError", std::to_string(p) + " is not prime");
  long pp;
  m_ = p_prime_part(N, p, &pp);
  if (m_ == 1) {
    if (ideal_choice != 0) fail("DomainError", "ideal choice out of range");
    f_ = {p - 1, 1};  // x - 1
    beta_ = 0;
  } else {
    auto factors = fp::cyclotomic_factors(m_, p);
    if (ideal_choice >= factors.size()) fail("DomainError", "ideal choice out of range");
    f_ = factors[ideal_choice];
    beta_ = mod_inverse(pp % m_, m_);
  }
  theta_pow_.reserve(m_);
  FpPoly t{1};
  const FpPoly x{0, 1};
  for (long k = 0; k < m_; ++k) {
    theta_pow_.push_back(t);
    t = fp::rem(fp::mul(t, x, p), f_, p);
  }
}

FiniteFieldElement ResidueMap::reduce(const Cyclotomic& a) const {
  const long d = a.conductor();
  if (N_ % d != 0) fail("ConductorMismatch", "conductor " + std::to_string(d) + " does not divide " + std::to_string(N_));
  if (!a.is_algebraic_integer()) fail("NotAlgebraicInteger", a.str());
  const long step = static_cast<long>((static_cast<__int128>(beta_) * (N_ / d)) % m_);
  FpPoly acc(fp::degree(f_), 0);
  const auto& num = a.numerators();
  for (size_t i = 0; i < num.size(); ++i) {
    if (num[i] == 0) continue;
    Integer c = num[i] % p_;
    if (c < 0) c += p_;
    long cl = c.get_si();
    if (cl == 0) continue;
    const FpPoly& t = theta_pow_[static_cast<long>((static_cast<__int128>(i) * step) % m_)];
    for (size_t j = 0; j < t.size() && j < acc.size(); ++j)
      acc[j] = static_cast<long>((acc[j] + static_cast<__int128>(cl) * t[j]) % p_);
  }
  return {p_, f_, acc};
}

FiniteFieldElement residue_reduce(const Cyclotomic& a, long p, size_t ideal_choice) {
  return ResidueMap(a.conductor(), p, ideal_choice).reduce(a);
}

}  // namespace ettk
