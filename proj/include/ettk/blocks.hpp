#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ettk/chartab.hpp"
#include "ettk/finite_field.hpp"

namespace ettk {

struct Block {
  std::string id;              // content-addressed: "B[" + sorted member ids + "]"
  std::vector<int> members;    // irreducible indices, increasing
  int defect = 0;
};

struct BlockPartition {
  long p = 0;
  std::vector<Block> blocks;   // ordered by smallest member index
  size_t principal = 0;        // index into blocks
  std::vector<int> block_of;   // irreducible index -> block index

  const Block& principal_block() const { return blocks[principal]; }
  int find(const std::string& id) const;
};

// omega_chi(C) = |C| chi(g_C) / chi(1); throws NonIntegralOmega.
std::vector<Cyclotomic> central_character(const CharacterTable& t, int chi);

BlockPartition block_partition(const CharacterTable& t, long p, size_t ideal_choice = 0);
size_t ideal_choice_count(const CharacterTable& t, long p);

// Sub-sum of the decomposition lying in the given block.
Decomposition block_filter(const Decomposition& phi, const BlockPartition& bp, size_t block);

nlohmann::json block_report_json(const CharacterTable& t, const BlockPartition& bp);

struct ObstructionWitness {
  int class_index;
  Integer modulus;
};

// Irreducibles whose kernel meets the designated central subgroup trivially.
std::vector<int> faithful_irreducibles(const CharacterTable& t, long center_order);

// All witnesses in class order; the first is the canonical answer.
std::vector<ObstructionWitness> faithful_et_witnesses(const CharacterTable& t, long p, long center_order);
std::optional<ObstructionWitness> faithful_et_obstruction(const CharacterTable& t, long p, long center_order);

}  // namespace ettk
