#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ncreeb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// Malformed input object (bad radius, bad band spec, broken invariant).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A builder could not realize the requested domain.
class BuildError : public Error {
public:
  using Error::Error;
};

/// The operation only supports circle arrangements (or circle cylinders).
class UnsupportedDomain : public Error {
public:
  using Error::Error;
};

/// Grid too coarse to resolve the singular levels unambiguously.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// A graph violated a structural invariant.
class IntegrityError : public Error {
public:
  using Error::Error;
};

/// Input exceeds a configured size cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Schema violations collected from a structured-text file.
class ParseError : public Error {
public:
  explicit ParseError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  std::vector<std::string> violations_;
};

}  // namespace ncreeb
