#pragma once

#include <stdexcept>
#include <string>

namespace fsos {

enum class ErrorKind {
  kDimensionMismatch,
  kCapExceeded,
  kInvalidArgument,
  kParse,
  kNumerical,
  kMalformed,
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the DIMACS reader; carries the 1-based line of the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fsos
