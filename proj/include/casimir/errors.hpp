#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside the domain of an operation (negative distance, z behind the wall, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical limit process (extrapolation ladder, adaptive quadrature) did not settle.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double last, double previous)
      : std::runtime_error(what), last_(last), previous_(previous) {}

  double last() const noexcept { return last_; }
  double previous() const noexcept { return previous_; }

private:
  double last_;
  double previous_;
};

/// Internal cross-check failed (e.g. an imaginary part that should cancel did not).
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (trajectory tables).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad command line or config file.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace casimir
