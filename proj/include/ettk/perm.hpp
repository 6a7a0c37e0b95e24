#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ettk/chartab.hpp"

namespace ettk {

using Perm = std::vector<uint32_t>;

struct PermHash {
  size_t operator()(const Perm& p) const noexcept;
};

// Product applying a first, then b.
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inv(const Perm& a);
Perm perm_identity(size_t degree);
Perm perm_pow(const Perm& a, long k);
long perm_order(const Perm& a);

struct GroupOptions {
  size_t order_cap = 200000;
};

class PermGroup {
public:
  size_t degree = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;  // breadth-first from the identity

  size_t order() const { return elements.size(); }
  // Index into elements; throws when absent.
  size_t index_of(const Perm& p) const;

  friend PermGroup enumerate_group(size_t, const std::vector<Perm>&, const GroupOptions&);

private:
  std::unordered_map<Perm, uint32_t, PermHash> index_;
};

PermGroup enumerate_group(size_t degree, const std::vector<Perm>& gens, const GroupOptions& opt = {});
PermGroup load_generators(const std::string& path, const GroupOptions& opt = {});
PermGroup generators_from_json(const nlohmann::json& j, const GroupOptions& opt = {});

struct ConjugacyClass {
  size_t rep;          // element index
  size_t size;
  long element_order;
  std::string name;
};

struct ConjugacyData {
  std::vector<ConjugacyClass> classes;
  std::map<long, std::vector<int>> power_maps;  // prime -> class map
  std::vector<size_t> centralizer_orders;
  std::vector<int> class_of;  // element index -> class index
};

ConjugacyData conjugacy_data(const PermGroup& g);

struct DixonOptions {
  uint64_t seed = 0x5eed;
  int max_rounds = 500;
};

CharacterTable dixon_table(const PermGroup& g, const std::string& name = "G", const DixonOptions& opt = {});

}  // namespace ettk
