#pragma once

#include <stdexcept>
#include <string>

namespace vibelab {

/// File-level failure: missing, unreadable, unwritable. CLI exit code 3.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical solve did not reach the required constraint residual.
struct ConvergenceError : std::runtime_error {
  double residual;
  explicit ConvergenceError(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
};

}  // namespace vibelab
