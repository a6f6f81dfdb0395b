#pragma once

#include <stdexcept>
#include <string>

namespace asymap {

// Numerical failures: the computation was set up correctly but did not
// reach its target (iteration or quadrature budget, bracketing, ...).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotConverged : NumericalError {
  int iterations;
  explicit NotConverged(int iters, const std::string& what)
      : NumericalError(what), iterations(iters) {}
};

struct InvalidEps : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoContractionRadius : NumericalError {
  using NumericalError::NumericalError;
};

struct LevelSetNotBracketed : NumericalError {
  using NumericalError::NumericalError;
};

struct QuadratureBudgetExceeded : NumericalError {
  using NumericalError::NumericalError;
};

struct FitIllConditioned : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace asymap
