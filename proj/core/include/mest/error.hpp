#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mest {

// Base of every error thrown by the library. The CLI maps the concrete
// subclass onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A PopulationParams / config field violates its invariant.
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// An estimator or formula evaluated outside its domain (xbar <= 0, mu_y = 0 in C_y, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed parameter file or CSV.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Stationarity system of a weight quadratic is singular.
class DegenerateQuadratic : public Error {
 public:
  using Error::Error;
};

// Monte Carlo run could not produce a result.
class SimulationFailure : public Error {
 public:
  using Error::Error;
};

// Theory/simulation comparison with zero Monte Carlo spread and a mismatch.
class DegenerateComparison : public Error {
 public:
  using Error::Error;
};

}  // namespace mest
