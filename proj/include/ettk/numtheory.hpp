#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

namespace ettk {

using Integer = mpz_class;
using Rational = mpq_class;

// Distinct prime divisors in increasing order.
std::vector<long> prime_divisors(long n);
long euler_phi(long n);
bool is_prime(long n);
long mod_pow(long base, long exp, long mod);
long mod_inverse(long a, long mod);
inline long pos_mod(long a, long m) { a %= m; return a < 0 ? a + m : a; }

// Exponent of the prime p in a nonzero integer.
int p_valuation(const Integer& n, long p);
// Largest power of p dividing n.
Integer p_part(const Integer& n, long p);

}  // namespace ettk
