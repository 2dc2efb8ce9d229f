#include "coordscope/error.hpp"

namespace coordscope {

namespace {
std::string with_line(std::size_t line, const std::string& what) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}
}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(with_line(line, what)), line_(line) {}

SchemaError::SchemaError(std::size_t line, const std::string& what)
    : Error(with_line(line, what)), line_(line) {}

}  // namespace coordscope
