#pragma once

#include <stdexcept>
#include <string>

namespace risd2d {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element count is not a perfect square, or an angle/index is out of range.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A closed form hit a non-positive denominator or similar.
class NumericalDomain : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search would exceed its candidate budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A configuration field violates an invariant. `field()` is the dotted
/// path of the offending field, e.g. "pairs[2].rician_a_db".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& rule)
      : Error(field + ": " + rule), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace risd2d
