#pragma once

#include <string>
#include <vector>

#include "ettk/registry.hpp"

namespace ettk {

struct SectionResult {
  std::string name;
  nlohmann::json report;
  std::vector<std::string> prose;
};

std::vector<std::string> reproduce_sections();
SectionResult reproduce(const FixtureRegistry& reg, const std::string& section);

}  // namespace ettk
