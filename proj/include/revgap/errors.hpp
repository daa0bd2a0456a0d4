#pragma once

#include <stdexcept>
#include <string>

namespace revgap {

// Root of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric parameter (order, exponent, dimension, p >= n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the admissible domain, e.g. t outside [-1, 1].
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at an endpoint where the Jacobi factor is singular.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// Mismatched contexts or sizes between objects that must agree.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Mass matrix not positive definite or quadrature under-resolved.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this profile or (n, m) combination.
class UnsupportedCaseError : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check could not be decided (e.g. ambiguous eigenpair match).
class DiagnosticError : public Error {
 public:
  using Error::Error;
};

/// Profile violates positivity/convexity requirements.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input documents (JSON profile or experiment files).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace revgap
