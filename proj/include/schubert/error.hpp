#pragma once

#include <stdexcept>
#include <string>

namespace schubert {

// Raised when an enumeration or search would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: wrong dimensions, bad index sets, singular maps, ...
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace schubert
