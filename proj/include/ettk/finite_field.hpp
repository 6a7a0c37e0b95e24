#pragma once

#include <string>
#include <vector>

#include "ettk/cyclo.hpp"

namespace ettk {

// Dense polynomial over F_p, low degree first, no trailing zeros except for
// the zero polynomial {0}.
using FpPoly = std::vector<long>;

namespace fp {
FpPoly trim(FpPoly a);
int degree(const FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, long p);
FpPoly sub(const FpPoly& a, const FpPoly& b, long p);
FpPoly mul(const FpPoly& a, const FpPoly& b, long p);
FpPoly rem(const FpPoly& a, const FpPoly& m, long p);
FpPoly quo(const FpPoly& a, const FpPoly& m, long p);
FpPoly monic(const FpPoly& a, long p);
FpPoly gcd(FpPoly a, FpPoly b, long p);
FpPoly powmod(const FpPoly& a, const Integer& e, const FpPoly& m, long p);
// Monic irreducible factors of Phi_m over F_p (p not dividing m), sorted
// lexicographically by coefficient sequence from the constant term upward.
std::vector<FpPoly> cyclotomic_factors(long m, long p);
}  // namespace fp

class FiniteFieldElement {
public:
  FiniteFieldElement(long p, FpPoly modulus, FpPoly coords);
  long p() const { return p_; }
  const FpPoly& modulus() const { return modulus_; }
  // Length degree(modulus), low degree first.
  const FpPoly& coords() const { return coords_; }
  bool is_zero() const;

  FiniteFieldElement operator+(const FiniteFieldElement& b) const;
  FiniteFieldElement operator-(const FiniteFieldElement& b) const;
  FiniteFieldElement operator*(const FiniteFieldElement& b) const;
  bool operator==(const FiniteFieldElement& b) const;
  std::string str() const;

private:
  void check_same(const FiniteFieldElement& b) const;
  long p_;
  FpPoly modulus_;
  FpPoly coords_;
};

// Ring homomorphism Z[zeta_N] -> F_p[x]/(f) where f is the chosen irreducible
// factor of Phi_m, m the p'-part of N. zeta_N maps to theta^beta with theta = x
// and beta the inverse of the p-part of N modulo m, so the primitive m-th root
// zeta_N^(N/m) maps to theta itself.
class ResidueMap {
public:
  ResidueMap(long N, long p, size_t ideal_choice);
  static size_t choice_count(long N, long p);

  long conductor() const { return N_; }
  long p() const { return p_; }
  const FpPoly& modulus() const { return f_; }
  // Requires conductor(a) | N and integral coordinates.
  FiniteFieldElement reduce(const Cyclotomic& a) const;

private:
  long N_, p_, m_, beta_;
  FpPoly f_;
  std::vector<FpPoly> theta_pow_;  // theta^k for 0 <= k < m
};

FiniteFieldElement residue_reduce(const Cyclotomic& a, long p, size_t ideal_choice);

}  // namespace ettk
