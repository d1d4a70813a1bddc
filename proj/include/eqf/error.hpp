#pragma once

#include <stdexcept>
#include <string>

namespace eqf {

// Every recoverable failure carries a short machine-readable kind,
// e.g. "division-by-zero", "shape-violation", "syntax-error".
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace eqf
