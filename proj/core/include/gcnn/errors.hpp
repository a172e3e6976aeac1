#pragma once

#include <stdexcept>
#include <string>

namespace gcnn {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupMismatch : Error {
  using Error::Error;
};
struct InvalidMatrix : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct IndexOutOfRange : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct EmptyDomain : Error {
  using Error::Error;
};
struct UnknownModel : Error {
  using Error::Error;
};
struct SizeMismatch : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct RangeError : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct VersionError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace gcnn
