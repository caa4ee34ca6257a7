#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cltwe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range security parameter, universe size, or malformed plaintext.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Level mismatch on add, level overflow on mul, non-top level on zero-test.
class LevelError : public Error {
 public:
  using Error::Error;
};

// Witness index outside [0, set count) or duplicated.
class WitnessError : public Error {
 public:
  using Error::Error;
};

// Non-coprime moduli and similar number-theoretic precondition failures.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// decode_debug found a slot whose numerator exceeds the noise budget.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Sudoku clues that violate a rule, or a solution grid that does.
class PuzzleError : public Error {
 public:
  using Error::Error;
};

class SolutionError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized data. `offset` is the byte offset of the offending line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Malformed human-edited puzzle file. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cltwe
