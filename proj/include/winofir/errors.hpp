#pragma once

#include <stdexcept>
#include <string>

namespace winofir {

// Fixed-point result left the representable range under OverflowPolicy::error.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Mixed-backend or mixed-format operands.
class BackendMismatchError : public std::invalid_argument {
 public:
  explicit BackendMismatchError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Malformed input file or inline value; message carries path/line context.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace winofir
