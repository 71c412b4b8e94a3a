#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

/// Raised when an operation receives arguments outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a visibility is requested but the counting rate is identically zero.
class NoSignalError : public std::runtime_error {
 public:
  explicit NoSignalError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the lossless configuration already fails to violate the CHSH bound.
class NoViolationError : public std::runtime_error {
 public:
  explicit NoViolationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace catsim
