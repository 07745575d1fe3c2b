#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracspec {

/// Invalid user-facing configuration (unknown experiment, out-of-range parameter, ...).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computation could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Zero (or numerically zero) pivot met during a linear solve.
class SingularSystemError : public NumericalError {
public:
  SingularSystemError(std::size_t pivot, const std::string& what);
  std::size_t pivot() const noexcept { return pivot_; }

private:
  std::size_t pivot_;
};

/// A series or iteration hit its cap before reaching tolerance.
class NonConvergenceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace fracspec
