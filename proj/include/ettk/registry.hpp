#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ettk/chartab.hpp"
#include "ettk/perm.hpp"

namespace ettk {

struct FixtureEntry {
  std::string name;
  std::string kind;  // table | fusion | generators | data
  std::string file;
  std::string provenance;
  std::string note;
  std::string sub, big;                        // fusions only
  std::map<std::string, std::string> labels;   // alternative character names -> ids
};

// Fixture directory: explicit argument, else $ETTK_FIXTURES, else the build default.
std::string fixture_dir(const std::string& override_dir = "");

class FixtureRegistry {
public:
  explicit FixtureRegistry(const std::string& dir = "");

  const std::string& dir() const { return dir_; }
  const std::vector<FixtureEntry>& entries() const { return entries_; }
  const FixtureEntry& entry(const std::string& name) const;
  bool has(const std::string& name) const;
  std::string path(const std::string& name) const;

  // Loaded once and validated on first use; throws InvalidTable on failure.
  TablePtr table(const std::string& name) const;
  FusionMap fusion(const std::string& sub, const std::string& big) const;
  PermGroup generators(const std::string& name) const;
  nlohmann::json data(const std::string& name) const;

  // Irreducible id for an id or a manifest label of the given table.
  std::string character_id(const std::string& table, const std::string& label) const;

  // Loads and validates every table and fusion; one line per problem.
  std::vector<std::string> validate_all() const;

private:
  std::string dir_;
  std::vector<FixtureEntry> entries_;
  mutable std::mutex mu_;
  mutable std::map<std::string, TablePtr> tables_;
};

// A registry name, or a path when the argument names a .json file.
TablePtr resolve_table(const FixtureRegistry& reg, const std::string& name_or_path);

}  // namespace ettk
