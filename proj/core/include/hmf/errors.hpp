#pragma once

#include <stdexcept>
#include <string>

namespace hmf {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

// Inputs are well formed but violate a structural requirement
// (parity of a character, coprimality of levels, non-primitive twist...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

class IllConditionedError : public Error {
public:
  IllConditionedError(const std::string& what, double separation)
      : Error(what), separation_(separation) {}
  double separation() const noexcept { return separation_; }

private:
  double separation_;
};

} // namespace hmf
