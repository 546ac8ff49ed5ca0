#ifndef COCALC_ERROR_HPP
#define COCALC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cocalc {

// Base class for all domain failures (sort mismatches, guardedness, ...).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SortError : Error {
  explicit SortError(const std::string& msg) : Error(msg) {}
};

struct GuardednessError : Error {
  explicit GuardednessError(const std::string& msg) : Error(msg) {}
};

// Syntax errors carry a 1-based position into the source text.
struct ParseError : Error {
  std::size_t line;
  std::size_t column;
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
};

}  // namespace cocalc

#endif
