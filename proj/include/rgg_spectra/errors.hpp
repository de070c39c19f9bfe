#pragma once

#include <stdexcept>
#include <string>

namespace rgg {

// Every failure the toolkit reports derives from Error so callers (the CLI in
// particular) can map categories to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, out-of-range parameter, bad file.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The requested (gamma, n, d) combination has no valid connection radius.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// alpha = 0 on a graph with isolated vertices.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Dense eigensolve requested beyond the supported matrix order.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A fit could not be carried out (too few points, degenerate window).
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rgg
