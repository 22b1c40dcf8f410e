#pragma once

#include <stdexcept>
#include <string>

namespace deltascat {

/// Bad arguments: ranges, counts, malformed arrays.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

class InvalidWavenumber : public ArgumentError {
 public:
  explicit InvalidWavenumber(const std::string& what) : ArgumentError(what) {}
};

/// Arithmetic could not produce a meaningful value (bracket failure, vanishing m22).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace deltascat
