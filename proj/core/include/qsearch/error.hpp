#pragma once

#include <stdexcept>
#include <string>

namespace qsearch {

/// Raised when user-supplied input violates a documented invariant
/// (scenario schema, parameter range, malformed distribution). The CLI maps
/// this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an internal consistency check fails (CLI exit code 2).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qsearch
