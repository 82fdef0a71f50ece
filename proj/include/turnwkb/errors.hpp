#pragma once

#include <stdexcept>
#include <string>

namespace turnwkb {

// Common base so callers can catch all library errors at once.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// The arbitrary-precision evaluator could not certify the requested
// accuracy within its digit budget.
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

// A standing assumption on the coefficient function or on eps fails;
// the message names the assumption that is violated.
class AssumptionError : public Error {
 public:
  explicit AssumptionError(const std::string& msg) : Error(msg) {}
};

// method=exact requested but no closed-form phase is registered for the body.
class UnsupportedExact : public Error {
 public:
  explicit UnsupportedExact(const std::string& msg) : Error(msg) {}
};

// Back-transformed W vector has an imaginary residue above tolerance.
class RealityError : public Error {
 public:
  explicit RealityError(const std::string& msg) : Error(msg) {}
};

// Denominator of the boundary-condition scaling constant vanished.
class SingularAlpha : public Error {
 public:
  explicit SingularAlpha(const std::string& msg) : Error(msg) {}
};

// Two-piece matching system is numerically singular.
class SingularMatch : public Error {
 public:
  explicit SingularMatch(const std::string& msg) : Error(msg) {}
};

// Adaptive step-size controller drove the step below its floor.
class StepUnderflow : public Error {
 public:
  explicit StepUnderflow(const std::string& msg) : Error(msg) {}
};

}  // namespace turnwkb
