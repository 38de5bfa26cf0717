#pragma once

#include <stdexcept>
#include <string>

namespace khdetect {

// Every error thrown by the toolkit derives from Error so callers can map
// the concrete type to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// A diagram (or generator parameter set) that describes more than one component.
class LinkError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

// Operation applied to a scalar domain it does not support (e.g. rank over Z).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace khdetect
