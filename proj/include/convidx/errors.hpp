#pragma once

#include <stdexcept>
#include <string>

namespace convidx {

/// An argument lies outside the mathematical domain or the supported
/// parameter box of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerically checked precondition did not hold (for instance the
/// monotonicity gate in front of profile inversion).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration. The message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace convidx
