#include "ettk/error.hpp"

namespace ettk {

Error::Error(std::string name, const std::string& what)
    : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

void fail(const std::string& name, const std::string& what) {
  throw Error(name, what);
}

}  // namespace ettk
