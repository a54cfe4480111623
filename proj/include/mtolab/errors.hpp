#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mto {

/// Argument outside the mathematical domain of a function (x <= 0 for log_gamma, gamma out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid construction parameter (quadrature size, Jacobi exponents, truncation).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two operands built on different contexts.
class ContextMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested parameter is closer to the endpoint (gamma = n/2 or d = Q) than the guard allows.
class EndpointProximityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PluriharmonicityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mto
