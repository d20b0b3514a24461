#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtorus {

/// Raised when a table would hold more distinct keys than the caller allowed.
/// Callers are expected to refuse the request (CLI exit code 2), not crash.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t budget, const std::string& what)
      : std::runtime_error("budget of " + std::to_string(budget) +
                           " distinct keys exceeded: " + what),
        budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

class AsymmetricGeneratingSet : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class NotApplicable : public std::domain_error {
  using std::domain_error::domain_error;
};

class PreconditionViolated : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ZeroEigenvalue : public std::domain_error {
  using std::domain_error::domain_error;
};

class ZeroNotEigenvalue : public std::domain_error {
  using std::domain_error::domain_error;
};

/// A verified claim turned out false. Must never fire for the bound-24 check.
class Bound24Violated : public std::logic_error {
  using std::logic_error::logic_error;
};

/// Two independent routes disagreed (closed form vs enumeration, count
/// conservation, ...).
class ConsistencyError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace dtorus
