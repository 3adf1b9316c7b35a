#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deltak {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different variable signatures, rings or term orders.
class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

/// exact_div was asked to divide by something that is not a factor.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold
/// (constant input to leader(), t too small for a fiber model, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace deltak
