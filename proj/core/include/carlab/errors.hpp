#pragma once

#include <stdexcept>
#include <string>

namespace carlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidStructure : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Raised by operations that need the two subspaces in generic position.
class NotGeneric : public Error {
 public:
  using Error::Error;
};

class NotCyclicSeparating : public Error {
 public:
  using Error::Error;
};

class FockCapExceeded : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace carlab
