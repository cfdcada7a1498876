#pragma once

#include <stdexcept>
#include <string>

namespace effdirac {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed config/table/label text, or a value failing validation on load.
class ParseError : public Error {
public:
  using Error::Error;
};

// Inputs outside an operation's domain (bad quantum numbers, r <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// A required table entry is missing.
class DataError : public Error {
public:
  using Error::Error;
};

// kappa^2 <= (Z alpha)^2 g_a g_b: no bound state, the indicial exponent
// turns complex. Bound solutions exist only up to Z ~ 1/(alpha sqrt(g_a g_b)).
class SupercriticalError : public Error {
public:
  using Error::Error;
};

// Numerical machinery failed its own consistency checks (root finder vs
// closed form, ill-conditioned fit, ...).
class NumericalError : public Error {
public:
  using Error::Error;
};

// The radial series does not terminate at the supplied energy, i.e. the
// energy is not an eigenvalue. Carries the offending residual.
class SeriesTerminationError : public NumericalError {
public:
  SeriesTerminationError(const std::string& msg, double residual)
      : NumericalError(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

// A one-shot correction was applied twice to the same factor.
class IdempotencyError : public Error {
public:
  using Error::Error;
};

// Unwritable/unreadable stream or file.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace effdirac
