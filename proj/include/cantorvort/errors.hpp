#pragma once

#include <stdexcept>
#include <string>

namespace cantorvort {

/// Argument outside the mathematical domain of an operation (c <= 1, side <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds a configured resolution or generation bound.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called outside the regime where its result is defined.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested method is not available for the given arguments.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cantorvort
