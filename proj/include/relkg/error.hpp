#pragma once

#include <stdexcept>
#include <string>

namespace relkg {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Error carrying a source location inside an input file (1-based line).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace relkg
