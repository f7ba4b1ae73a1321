#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amif {

// Base of every error the library throws. Catch this at process boundaries.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Bad input values (non-finite samples, levels out of range).
class InputError : public Error {
 public:
  using Error::Error;
};

// Series too short or window/lag parameters inconsistent.
class SizingError : public Error {
 public:
  using Error::Error;
};

// Histogram/window desynchronization. Always a bug, never user error.
class ConsistencyFault : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  // `offset` is a 1-based line number for text input and a byte offset for
  // binary input.
  ParseError(const std::string& what, std::size_t offset) : Error(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Raised by the monitor pipeline; carries the index of the offending sample.
class SampleError : public Error {
 public:
  SampleError(const std::string& what, std::size_t index)
      : Error("sample " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace amif
