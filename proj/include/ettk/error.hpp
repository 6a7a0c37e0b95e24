#pragma once

#include <stdexcept>
#include <string>

namespace ettk {

// Every computational failure carries a stable name (e.g. "CapExceeded")
// alongside the human-readable message.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what);
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

[[noreturn]] void fail(const std::string& name, const std::string& what);

}  // namespace ettk
