#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pfis {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input data: missing observations, malformed CSV cells, non-finite values.
class DataError : public Error {
 public:
  using Error::Error;
};

/// An operation is undefined for the given values (all-zero distribution,
/// subnormal necessity input, unknown category, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// One schema or reference problem in a config document. `pointer` is a
/// JSON pointer into the offending location ("/variables/0/universe").
struct ConfigViolation {
  std::string pointer;
  std::string message;
};

/// Carries every violation found in a config, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::string summary, std::vector<ConfigViolation> violations = {})
      : Error(std::move(summary)), violations_(std::move(violations)) {}

  const std::vector<ConfigViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

}  // namespace pfis
