#pragma once

#include <stdexcept>
#include <string>

namespace subrigid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments or documents (bad letters, empty images, bad params).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Well-formed input outside the supported regime: non-primitive,
/// periodic, or not constant length where exact arithmetic needs it.
class RejectedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace subrigid
