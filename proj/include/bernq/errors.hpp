#pragma once

#include <stdexcept>
#include <string>

namespace bernq {

/// An argument lies outside the domain of the function being evaluated
/// (a pole of q, an endpoint where a correction degenerates, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical procedure failed: singular factorization, breakdown of a
/// small dense solve, size caps exceeded.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bernq
