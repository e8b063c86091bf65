#pragma once

#include <stdexcept>

namespace ipcdv {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad flags, ranges or config-file values.
struct ConfigError : Error {
  using Error::Error;
};

// File problems: missing, malformed, truncated.
struct IoError : Error {
  using Error::Error;
};

// Broken preconditions and violated internal contracts.
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace ipcdv
