#pragma once

#include <stdexcept>
#include <string>

namespace tricomi {

/// Input outside the mathematical domain of an operation (bad order, t = 0, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Parameters that violate a model invariant (p <= 1, q above the energy-critical bound, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its tolerance or to find what it searched for.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tricomi
