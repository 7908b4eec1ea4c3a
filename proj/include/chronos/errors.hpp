#pragma once

#include <stdexcept>
#include <string>

namespace chronos {

/// Raised when user-facing inputs violate a precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on numerical breakdown: singular pivots, ill-conditioned partial fractions, missing roots.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-point iteration did not reach the requested tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(int iterations, double residual, long step = -1);

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }
  /// Index of the failing step in a time history, or -1 when unknown.
  long step() const { return step_; }

  NonConvergence at_step(long step) const { return NonConvergence(iterations_, residual_, step); }

 private:
  int iterations_;
  double residual_;
  long step_;
};

}  // namespace chronos
