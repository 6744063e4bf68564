#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paraphrase {

// Base of every error raised by the library. The CLI maps these onto exit
// code 2; the message is what the user sees on stderr.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string &what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string &file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// A rule that parses but breaks a rule invariant (free rhs variable, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class QueryTooLong : public Error {
 public:
  QueryTooLong(std::size_t length, std::size_t max_n)
      : Error("query of length " + std::to_string(length) +
              " exceeds index max_n=" + std::to_string(max_n)),
        length_(length),
        max_n_(max_n) {}

  std::size_t length() const { return length_; }
  std::size_t max_n() const { return max_n_; }

 private:
  std::size_t length_;
  std::size_t max_n_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace paraphrase
