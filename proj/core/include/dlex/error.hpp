#pragma once

#include <stdexcept>
#include <string>

namespace dlex {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Entity does not belong to the dialect required by an operation.
class DialectError : public Error {
 public:
  using Error::Error;
};

// Violated precondition (unassigned nominal, conflicting nominal
// assignment, overlapping Nom sets, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

// A configurable resource cap was exceeded.  Reported, never silently
// truncated.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlex
