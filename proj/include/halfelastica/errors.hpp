#pragma once

#include <stdexcept>
#include <string>

namespace halfelastica {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Modulus point lies in the wrong region for the requested curve family.
class RegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Iterative or adaptive procedure could not reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Requested characteristic number lies outside the attainable interval.
class OutOfRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A scan for sign changes found no bracket to refine.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace halfelastica
