#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexopt {

/// Bad input values: non-normalized distributions, out-of-range parameters,
/// mismatched dimensions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Binary container problems (bad magic, unknown version, truncation).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical invariant was violated; indicates a bug upstream.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lexopt
