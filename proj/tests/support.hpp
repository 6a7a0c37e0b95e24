#pragma once

#include <functional>
#include <string>

#include "doctest.h"
#include "ettk/error.hpp"
#include "ettk/registry.hpp"

namespace testing {

inline const ettk::FixtureRegistry& registry() {
  static ettk::FixtureRegistry reg(ETTK_DEFAULT_FIXTURES);
  return reg;
}

// Name of the ettk::Error raised by f, or "" when nothing is thrown.
inline std::string error_name(const std::function<void()>& f) {
  try {
    f();
  } catch (const ettk::Error& e) {
    return e.name();
  }
  return "";
}

inline ettk::ClassFunction chi(const ettk::TablePtr& t, const std::string& id) {
  return ettk::ClassFunction::irreducible(t, id);
}

}  // namespace testing
