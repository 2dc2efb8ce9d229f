#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coordscope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed record that violates the input schema (missing or invalid field).
class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A quantity that is mathematically undefined for the given input
// (zero variance, zero total edge weight, isolated subgroup, ...).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace coordscope
