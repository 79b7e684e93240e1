#pragma once

#include <stdexcept>
#include <string>

namespace xspectra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter combination.
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Input outside the domain of a mathematical function (poles, branch cuts).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation hit a singular point of a potential, map or ODE coefficient.
class SingularityError : public Error {
public:
  SingularityError(const std::string& what, double location)
      : Error(what), location_(location) {}

  double location() const noexcept { return location_; }

private:
  double location_;
};

/// A construction (null-space solve) did not produce a unique answer.
class ConstructionError : public Error {
public:
  using Error::Error;
};

/// Engine output violated a structural consistency requirement.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// Iterative method or refinement loop failed to converge.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Non-finite integrand or function value at a sample point.
class EvaluationError : public Error {
public:
  EvaluationError(const std::string& what, double location)
      : Error(what), location_(location) {}

  double location() const noexcept { return location_; }

private:
  double location_;
};

/// Operation requires a different operand kind (e.g. real vs complex operator).
class TypeError : public Error {
public:
  using Error::Error;
};

}  // namespace xspectra
