#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ettk/numtheory.hpp"

namespace ettk {

// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1) modulo the
// n-th cyclotomic polynomial, stored as integer numerators over a common
// positive denominator. Instances are always canonical: reduced, conductor
// minimal, numerators and denominator coprime. Equality is structural.
class Cyclotomic {
public:
  Cyclotomic();
  Cyclotomic(long v);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Integer& v);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& v);  // NOLINT(google-explicit-constructor)

  // zeta_n^k.
  static Cyclotomic root_of_unity(long n, long k = 1);
  // Sum of c * zeta_n^e over the given terms; exponents are taken mod n.
  static Cyclotomic from_terms(long n, const std::vector<std::pair<long, Rational>>& terms);
  // Raw power-basis coordinates of any length, reduced and canonicalized.
  static Cyclotomic from_coeffs(long n, const std::vector<Rational>& coeffs);

  long conductor() const { return n_; }
  std::vector<Rational> coeffs() const;
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  bool is_zero() const;
  bool is_rational() const { return n_ == 1; }
  // Requires is_rational().
  Rational rational() const;
  std::optional<Integer> as_integer() const;
  bool is_algebraic_integer() const { return den_ == 1; }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& b);
  Cyclotomic& operator-=(const Cyclotomic& b);
  Cyclotomic& operator*=(const Cyclotomic& b);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  // Division by a nonzero rational.
  Cyclotomic operator/(const Rational& r) const;
  Cyclotomic pow(unsigned long k) const;

  // Image under zeta_n -> zeta_n^j; throws NonCoprimeExponent.
  Cyclotomic galois(long j) const;
  Cyclotomic conj() const { return galois(-1); }
  bool abs_is_one() const;

  // Same field element expressed with conductor n (n a multiple of conductor()).
  std::vector<Integer> numerators_in(long n) const;

  bool operator==(const Cyclotomic& b) const;
  // Deterministic total order used for sorting; not an arithmetic order.
  std::strong_ordering operator<=>(const Cyclotomic& b) const;

  std::string str() const;

private:
  Cyclotomic(long n, std::vector<Integer> num, Integer den);
  void canonicalize();
  void normalize_content();

  long n_;
  std::vector<Integer> num_;
  Integer den_;
};

enum class CycOp { add, sub, mul };

Cyclotomic cyc_arith(const Cyclotomic& a, const Cyclotomic& b, CycOp kind);
Cyclotomic cyc_galois(const Cyclotomic& a, long j);
Cyclotomic cyc_canonical(long n, const std::vector<Rational>& coeffs);
std::optional<Integer> cyc_as_rational_integer(const Cyclotomic& a);
bool cyc_abs_is_one(const Cyclotomic& a);

// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
const std::vector<Integer>& cyclotomic_polynomial(long n);

// Literal syntax: "n", "a/b", or {"n": N, "terms": [[e, "a/b"], ...]}.
Cyclotomic parse_cyclotomic(const nlohmann::json& j);
nlohmann::json cyclotomic_to_json(const Cyclotomic& a);

Rational parse_rational(const std::string& s);

}  // namespace ettk
