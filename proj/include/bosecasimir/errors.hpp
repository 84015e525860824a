#pragma once

#include <stdexcept>
#include <string>

namespace bosecasimir {

// Argument or result left the mathematical domain of an operation
// (|z| > 1 for a polylog series, d <= 0, non-finite derived scalar, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A sum or integral was requested in a regime where it diverges
// (fugacity-series oracles with field shift A > 0).
class RegimeError : public DomainError {
 public:
  explicit RegimeError(const std::string& what) : DomainError(what) {}
};

// Polylog order outside the range served by the unit-circle closed forms.
class UnsupportedOrderError : public std::invalid_argument {
 public:
  explicit UnsupportedOrderError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Invalid sweep/verify configuration (violated invariants, bad enum text).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Output directory or file could not be created/written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bosecasimir
