#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdwlft {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or on the shape of the data was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Training produced a non-finite parameter.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t epoch, std::size_t position,
                  const std::string& what)
      : Error(what), epoch_(epoch), position_(position) {}

  std::size_t epoch() const noexcept { return epoch_; }
  /// Position of the offending entry in the epoch's visiting order.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t epoch_;
  std::size_t position_;
};

}  // namespace tdwlft
