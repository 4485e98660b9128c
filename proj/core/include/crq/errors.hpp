#pragma once

#include <stdexcept>
#include <string>

namespace crq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A constructor or function argument violates its domain.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The operating point lies outside the region where the quantity exists.
class UnstableError : public Error {
public:
  using Error::Error;
};

/// A per-packet rate or delay is undefined (zero arrival or service rate).
class UndefinedRateError : public Error {
public:
  using Error::Error;
};

/// p_q = 1 with no relay inflow: the relay-queue stability bound is 0/0.
class DegeneratePolicyError : public Error {
public:
  using Error::Error;
};

/// A closed form hit a non-positive or zero denominator it divides by.
class DomainError : public Error {
public:
  using Error::Error;
};

/// No policy in the feasible set keeps the system stable.
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// Stationary solve did not reach the residual tolerance.
class NonConvergenceError : public Error {
public:
  using Error::Error;
};

/// Stationary mass on the truncation edge exceeds the acceptance bound.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// A simulated queue crossed the configured length cap.
class RunAborted : public Error {
public:
  using Error::Error;
};

/// Malformed configuration text. line() is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

}  // namespace crq
