#ifndef GVSA_ERRORS_HPP
#define GVSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gvsa {

/// Invalid dimensions, ranges, or option combinations supplied by a caller.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Failure reading or writing external data.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (non-finite input, degenerate decomposition, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gvsa

#endif
