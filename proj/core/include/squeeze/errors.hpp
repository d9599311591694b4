#pragma once

#include <stdexcept>
#include <string>

namespace squeeze {

// Base for every failure raised by the library. Callers that only need to
// distinguish "physics/config problem" from programming errors catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fock-space cutoff too small for the requested state or evolution.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Integrator step too large for the Hamiltonian norm.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

// Off-resonant formulas requested outside the strong-coupling regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class BranchError : public Error {
 public:
  using Error::Error;
};

class ProfileMissing : public Error {
 public:
  using Error::Error;
};

// Physically invalid parameter set (delta = 0, negative decay, non-finite).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace squeeze
