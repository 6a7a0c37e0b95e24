#include <fstream>
#include <sstream>

#include "ettk/chartab.hpp"
#include "ettk/error.hpp"

namespace ettk {

namespace {

const nlohmann::json& field_of(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail("ParseError", where + ": missing \"" + key + "\"");
  return j.at(key);
}

Integer json_integer(const nlohmann::json& j, const std::string& where) {
  try {
    if (j.is_string()) return Integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  } catch (const std::invalid_argument&) {
  }
  fail("ParseError", where + ": expected an integer, got " + j.dump());
}

}  // namespace

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileError", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("ParseError", path + ": " + e.what());
  }
}

TablePtr table_from_json(const nlohmann::json& j) {
  auto t = std::make_shared<CharacterTable>();
  t->name = field_of(j, "name", "table").get<std::string>();
  const std::string where = "table " + t->name;
  t->order = json_integer(field_of(j, "order", where), where + " order");
  for (const auto& c : field_of(j, "classes", where)) {
    ClassInfo ci;
    ci.name = field_of(c, "name", where).get<std::string>();
    ci.size = json_integer(field_of(c, "size", where), where + " class " + ci.name);
    ci.element_order = field_of(c, "element_order", where).get<long>();
    if (c.contains("power_maps"))
      for (const auto& [q, idx] : c["power_maps"].items()) ci.power_maps[std::stol(q)] = idx.get<int>();
    t->classes.push_back(std::move(ci));
  }
  for (const auto& r : field_of(j, "irreducibles", where)) {
    Irreducible chi;
    chi.id = field_of(r, "id", where).get<std::string>();
    for (const auto& v : field_of(r, "values", where)) chi.values.push_back(parse_cyclotomic(v));
    t->irreducibles.push_back(std::move(chi));
  }
  if (j.contains("center")) t->center = j["center"].get<std::vector<int>>();
  return t;
}

nlohmann::json table_to_json(const CharacterTable& t) {
  nlohmann::json j;
  j["name"] = t.name;
  j["order"] = t.order.get_str();
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : t.classes) {
    nlohmann::json pm = nlohmann::json::object();
    for (const auto& [q, idx] : c.power_maps) pm[std::to_string(q)] = idx;
    classes.push_back({{"name", c.name}, {"size", c.size.get_str()}, {"element_order", c.element_order}, {"power_maps", pm}});
  }
  j["classes"] = classes;
  nlohmann::json irr = nlohmann::json::array();
  for (const auto& chi : t.irreducibles) {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : chi.values) vals.push_back(cyclotomic_to_json(v));
    irr.push_back({{"id", chi.id}, {"values", vals}});
  }
  j["irreducibles"] = irr;
  if (!t.center.empty()) j["center"] = t.center;
  return j;
}

TablePtr load_table(const std::string& path) { return table_from_json(read_json_file(path)); }

void save_table(const CharacterTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("FileError", "cannot write " + path);
  out << table_to_json(t).dump() << "\n";
}

FusionMap fusion_from_json(const nlohmann::json& j, TablePtr sub, TablePtr big) {
  FusionMap f{std::move(sub), std::move(big), {}};
  const std::string s = field_of(j, "sub", "fusion").get<std::string>();
  const std::string b = field_of(j, "big", "fusion").get<std::string>();
  if (s != f.sub->name || b != f.big->name)
    fail("TableMismatch", "fusion " + s + "->" + b + " applied to " + f.sub->name + "->" + f.big->name);
  f.map = field_of(j, "map", "fusion").get<std::vector<int>>();
  return f;
}

nlohmann::json fusion_to_json(const FusionMap& f) {
  return {{"sub", f.sub->name}, {"big", f.big->name}, {"map", f.map}};
}

FusionMap load_fusion(const std::string& path, TablePtr sub, TablePtr big) {
  return fusion_from_json(read_json_file(path), std::move(sub), std::move(big));
}

}  // namespace ettk
