#pragma once

#include <stdexcept>
#include <string>

namespace qgrass {

/// Enumeration would exceed the configured point budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal identity that must hold by construction did not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qgrass
