#pragma once

#include <stdexcept>
#include <string>

namespace grover_lab {

/// Dimension below 2, mismatched dimensions, or a target outside [0, n).
class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value violates the domain of the function it was passed to
/// (probability outside [0,1], tau outside [0,1], unnormalized state, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Brute-force paths refuse n above the desk-scale limit.
class DeskScaleExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An inequality of the lower-bound chain failed numerically.
class AuditFailure : public std::runtime_error {
 public:
  AuditFailure(std::string inequality, double slack)
      : std::runtime_error("audit failed: " + inequality + " slack " + std::to_string(slack)),
        inequality_(std::move(inequality)),
        slack_(slack) {}

  const std::string& inequality() const noexcept { return inequality_; }
  double slack() const noexcept { return slack_; }

 private:
  std::string inequality_;
  double slack_;
};

}  // namespace grover_lab
