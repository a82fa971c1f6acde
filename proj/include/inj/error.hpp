#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inj {

/// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration cap would be exceeded.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
      : Error(what + ": " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Input text that does not follow one of the documented formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when an operation is asked to handle a class shape it has no exact procedure for.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace inj
