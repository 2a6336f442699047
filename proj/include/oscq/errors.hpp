#pragma once

#include <stdexcept>
#include <string>

namespace oscq {

/// Argument outside the mathematical domain of an operation (branch cut, b <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Intermediate exponentials would leave the double range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative method failed to converge or a result failed its self-check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscq
