#pragma once

#include <map>
#include <string>
#include <vector>

namespace ettk {

// Invariant factors d1 | d2 | ... with every di > 1; empty for the trivial group.
using InvariantFactors = std::vector<long>;

InvariantFactors normalize_abelian(const std::vector<long>& cyclic_orders);
long abelian_order(const InvariantFactors& f);

// prime -> exponents of the cyclic q-parts, decreasing.
std::map<long, std::vector<int>> primary_partitions(const InvariantFactors& f);

// Whether X is isomorphic to a subgroup of T.
bool abelian_embeds(const InvariantFactors& x, const InvariantFactors& t);

std::vector<InvariantFactors> abelian_groups_of_order(long n);

// "Z/2+Z/4"; "0" for the trivial group.
std::string abelian_str(const InvariantFactors& f);
InvariantFactors parse_abelian(const std::string& s);

}  // namespace ettk
