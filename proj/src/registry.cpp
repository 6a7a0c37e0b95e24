#include "ettk/registry.hpp"

#include <cstdlib>
#include <filesystem>

#include "ettk/error.hpp"

#ifndef ETTK_DEFAULT_FIXTURES
#define ETTK_DEFAULT_FIXTURES "fixtures"
#endif

namespace ettk {

std::string fixture_dir(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("ETTK_FIXTURES"); env && *env) return env;
  return ETTK_DEFAULT_FIXTURES;
}

FixtureRegistry::FixtureRegistry(const std::string& dir) : dir_(fixture_dir(dir)) {
  auto manifest = read_json_file((std::filesystem::path(dir_) / "manifest.json").string());
  for (const auto& j : manifest.at("fixtures")) {
    FixtureEntry e;
    e.name = j.at("name").get<std::string>();
    e.kind = j.at("kind").get<std::string>();
    e.file = j.at("file").get<std::string>();
    e.provenance = j.at("provenance").get<std::string>();
    e.note = j.value("note", "");
    e.sub = j.value("sub", "");
    e.big = j.value("big", "");
    if (j.contains("labels")) e.labels = j["labels"].get<std::map<std::string, std::string>>();
    if (e.provenance.empty()) fail("InvalidManifest", "fixture " + e.name + " has no provenance");
    if (!std::filesystem::exists(std::filesystem::path(dir_) / e.file))
      fail("InvalidManifest", "fixture file missing: " + e.file);
    entries_.push_back(std::move(e));
  }
}

const FixtureEntry& FixtureRegistry::entry(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  fail("UnknownFixture", "no fixture named " + name + " in " + dir_);
}

bool FixtureRegistry::has(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

std::string FixtureRegistry::path(const std::string& name) const {
  return (std::filesystem::path(dir_) / entry(name).file).string();
}

TablePtr FixtureRegistry::table(const std::string& name) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = tables_.find(name); it != tables_.end()) return it->second;
  }
  const auto& e = entry(name);
  if (e.kind != "table") fail("UnknownFixture", name + " is not a character table");
  TablePtr t = load_table(path(name));
  auto rep = validate_table(*t);
  if (!rep.ok()) fail("InvalidTable", name + ": " + rep.issues.front());
  std::lock_guard lock(mu_);
  return tables_.emplace(name, t).first->second;
}

FusionMap FixtureRegistry::fusion(const std::string& sub, const std::string& big) const {
  for (const auto& e : entries_)
    if (e.kind == "fusion" && e.sub == sub && e.big == big) {
      FusionMap f = load_fusion(path(e.name), table(sub), table(big));
      auto rep = validate_fusion(f);
      if (!rep.ok()) fail("InvalidFusion", e.name + ": " + rep.issues.front());
      return f;
    }
  fail("UnknownFixture", "no fusion from " + sub + " into " + big);
}

PermGroup FixtureRegistry::generators(const std::string& name) const {
  if (entry(name).kind != "generators") fail("UnknownFixture", name + " is not a generator file");
  return load_generators(path(name));
}

nlohmann::json FixtureRegistry::data(const std::string& name) const { return read_json_file(path(name)); }

std::string FixtureRegistry::character_id(const std::string& tname, const std::string& label) const {
  const auto& e = entry(tname);
  if (auto it = e.labels.find(label); it != e.labels.end()) return it->second;
  table(tname)->irr_index(label);
  return label;
}

std::vector<std::string> FixtureRegistry::validate_all() const {
  std::vector<std::string> problems;
  for (const auto& e : entries_) {
    try {
      if (e.kind == "table") {
        auto t = load_table(path(e.name));
        for (const auto& s : validate_table(*t).issues) problems.push_back(e.name + ": " + s);
        for (const auto& [label, id] : e.labels) t->irr_index(id);
      } else if (e.kind == "fusion") {
        FusionMap f = load_fusion(path(e.name), load_table(path(e.sub)), load_table(path(e.big)));
        for (const auto& s : validate_fusion(f).issues) problems.push_back(e.name + ": " + s);
      } else if (e.kind == "generators") {
        generators(e.name);
      } else {
        data(e.name);
      }
    } catch (const Error& err) {
      problems.push_back(e.name + ": " + err.name() + ": " + err.what());
    } catch (const std::exception& err) {
      problems.push_back(e.name + ": " + err.what());
    }
  }
  return problems;
}

TablePtr resolve_table(const FixtureRegistry& reg, const std::string& s) {
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") return load_table(s);
  return reg.table(s);
}

}  // namespace ettk
