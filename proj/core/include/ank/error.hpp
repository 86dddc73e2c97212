#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ank {

/// Error thrown by kernel operations. `kind` is the stable machine-readable
/// name (e.g. "DivisionByZero", "NonCanonical"); the message adds detail.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& msg) {
  throw Error(std::move(kind), msg);
}

}  // namespace ank
