#include "ettk/numtheory.hpp"

#include "ettk/error.hpp"

namespace ettk {

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long euler_phi(long n) {
  long r = n;
  for (long q : prime_divisors(n)) r = r / q * (q - 1);
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

long mod_pow(long base, long exp, long mod) {
  unsigned __int128 r = 1 % mod, b = pos_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<long>(r);
}

long mod_inverse(long a, long mod) {
  long g = mod, x = 0, x1 = 1, b = pos_mod(a, mod);
  long r = b;
  while (r != 0) {
    long q = g / r;
    long t = g - q * r; g = r; r = t;
    t = x - q * x1; x = x1; x1 = t;
  }
  if (g != 1) fail("NotInvertible", std::to_string(a) + " mod " + std::to_string(mod));
  return pos_mod(x, mod);
}

int p_valuation(const Integer& n, long p) {
  if (n == 0) fail("DomainError", "valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    m /= p;
    ++v;
  }
  return v;
}

Integer p_part(const Integer& n, long p) {
  Integer r = 1;
  for (int i = p_valuation(n, p); i > 0; --i) r *= p;
  return r;
}

}  // namespace ettk
