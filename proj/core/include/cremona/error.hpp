#pragma once

#include <stdexcept>
#include <string>

namespace cremona {

/// Base class for every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data failed (bad cluster, bad coefficient,
/// malformed document). The CLI maps this to exit code 1.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed mid-computation. The CLI maps this to
/// exit code 2.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cremona
