#pragma once

#include <stdexcept>
#include <string>

namespace fractsob {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid family/level/vertex/word arguments.
struct ParameterError : Error {
  using Error::Error;
};

// Vertex budget exceeded while building a level graph.
struct CapacityError : Error {
  using Error::Error;
};

// A function was handed to an operation at an incompatible level.
struct LevelMismatchError : Error {
  using Error::Error;
};

// Spectral function undefined at a computed eigenvalue (e.g. negative power
// of a Neumann operator whose spectrum contains zero).
struct SpectralDomainError : Error {
  using Error::Error;
};

// Experiment hypotheses not satisfied (degenerate data, exponent out of range).
struct PreconditionError : Error {
  using Error::Error;
};

// Eigensolve residual or convergence failure; message carries diagnostics.
struct EigensolveError : Error {
  using Error::Error;
};

// Config parse/validation failure; message carries the offending field path.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fractsob
