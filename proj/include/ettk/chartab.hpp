#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ettk/cyclo.hpp"

namespace ettk {

struct ClassInfo {
  std::string name;
  Integer size;
  long element_order = 1;
  std::map<long, int> power_maps;  // prime -> class index
};

struct Irreducible {
  std::string id;
  std::vector<Cyclotomic> values;
};

struct CharacterTable {
  std::string name;
  Integer order;
  std::vector<ClassInfo> classes;
  std::vector<Irreducible> irreducibles;
  std::vector<int> center;  // designated central classes, may be empty

  size_t class_count() const { return classes.size(); }
  Integer centralizer_order(size_t c) const { return order / classes[c].size; }
  int irr_index(const std::string& id) const;
  int class_index(const std::string& name) const;
  long exponent() const;
  // lcm of the conductors of all irreducible values.
  long value_conductor() const;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

class ClassFunction {
public:
  ClassFunction(TablePtr table, std::vector<Cyclotomic> values);
  static ClassFunction irreducible(const TablePtr& t, const std::string& id);
  static ClassFunction irreducible(const TablePtr& t, size_t index);
  static ClassFunction trivial(const TablePtr& t);
  static ClassFunction zero(const TablePtr& t);

  const TablePtr& table() const { return table_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](size_t c) const { return values_[c]; }
  const Cyclotomic& degree() const { return values_[0]; }

  ClassFunction operator+(const ClassFunction& b) const;
  ClassFunction operator-(const ClassFunction& b) const;
  ClassFunction scaled(const Integer& k) const;
  bool operator==(const ClassFunction& b) const;

private:
  TablePtr table_;
  std::vector<Cyclotomic> values_;
};

struct FusionMap {
  TablePtr sub;
  TablePtr big;
  std::vector<int> map;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_table(const CharacterTable& t);
ValidationReport validate_fusion(const FusionMap& f);

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);
ClassFunction induce(const ClassFunction& lambda, const FusionMap& f);
ClassFunction restriction(const ClassFunction& chi, const FusionMap& f);
ClassFunction tensor(const ClassFunction& a, const ClassFunction& b);

struct Decomposition {
  TablePtr table;
  bool ok = false;                  // every multiplicity a non-negative integer
  std::vector<Cyclotomic> raw;      // <phi, chi_i> as computed
  std::vector<Integer> multiplicity;  // meaningful only when ok

  // e.g. "chi_12+chi_13+2*chi_21"; "0" for the zero character.
  std::string str() const;
  ClassFunction character() const;
};

Decomposition decompose(const ClassFunction& phi);
Decomposition decomposition_from(const TablePtr& t, std::vector<Integer> mult);

// Order of a root of unity, or 0 when the value is not one.
long root_of_unity_order(const Cyclotomic& z);
// Order of a linear character as a homomorphism into the roots of unity.
long linear_order(const ClassFunction& lambda);

struct LinearCharacterGroup {
  std::vector<int> elements;               // irreducible indices
  std::vector<long> orders;                // per element
  std::vector<long> invariant_factors;     // d1 | d2 | ...
  std::string note;
  long size() const { return static_cast<long>(elements.size()); }
};

LinearCharacterGroup linear_p_prime_group(const TablePtr& t, long p);

// File formats.
TablePtr table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const CharacterTable& t);
TablePtr load_table(const std::string& path);
void save_table(const CharacterTable& t, const std::string& path);
FusionMap fusion_from_json(const nlohmann::json& j, TablePtr sub, TablePtr big);
nlohmann::json fusion_to_json(const FusionMap& f);
FusionMap load_fusion(const std::string& path, TablePtr sub, TablePtr big);
nlohmann::json read_json_file(const std::string& path);

}  // namespace ettk
