#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signet {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// A metric that has no value on the given input (e.g. triangle index of a triangle-free graph).
class UndefinedError : public Error {
  public:
    using Error::Error;
};

} // namespace signet
