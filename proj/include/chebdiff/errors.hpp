#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chebdiff {

// Malformed coefficient or config file. The line number is 1-based; 0 means
// the error is not tied to a particular line (e.g. a JSON syntax error).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chebdiff
