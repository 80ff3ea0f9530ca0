#pragma once

#include <stdexcept>
#include <string>

#include "pinchcert/rational.hpp"

namespace pinchcert {

/// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on the input does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Endpoint nudging could not move an interval endpoint off a root.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A claimed strict sign is false; carries a rational witness.
class SignClaimError : public std::runtime_error {
 public:
  SignClaimError(const std::string& what, Rational point, Rational value)
      : std::runtime_error(what + " (witness x = " + point.to_string() + ", p(x) = " + value.to_string() + ")"),
        point_(std::move(point)),
        value_(std::move(value)) {}

  const Rational& point() const { return point_; }
  const Rational& value() const { return value_; }

 private:
  Rational point_;
  Rational value_;
};

}  // namespace pinchcert
