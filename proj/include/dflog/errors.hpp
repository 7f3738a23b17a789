#pragma once
// Exception hierarchy shared by all dflog modules.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dflog {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or syntactic failure in a theory, logic or conclusion text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t col)
      : Error(what + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_ = 0;
  std::size_t col_ = 0;
};

// Structurally well-formed input that violates a model invariant
// (duplicate labels, dangling references, unbound variables, cycles, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dflog
