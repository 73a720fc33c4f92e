#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace funcest {

/// Precondition on an argument was violated (n < 2, alpha <= 0, S too small, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested polynomial degree is above the configured cache bound.
class DegreeLimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The exchange iteration ran out of budget. Carries the last reference set.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> reference)
      : std::runtime_error(what), reference_(std::move(reference)) {}

  const std::vector<double>& reference() const noexcept { return reference_; }

 private:
  std::vector<double> reference_;
};

/// Monomial coefficients left the representable double range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Coverage estimate is zero: every observed symbol is a singleton.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace funcest
