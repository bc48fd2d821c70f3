#pragma once

#include <stdexcept>
#include <string>

namespace fairsub {

/// Base for every error the library raises on bad input or misuse.
/// The CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration: unknown column, malformed parameter list, out-of-range option.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The data itself violates an invariant (non-binary outcome, single group, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A call broke an operation's precondition (length mismatch, unevaluated population, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairsub
