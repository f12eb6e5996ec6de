#ifndef GFLAT_ERRORS_HPP
#define GFLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gflat {

/// Base class for all gflat exceptions.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid model or run configuration (maps to CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// A model/boundary/impurity combination the solver does not support.
struct UnsupportedCombination : ConfigError {
  using ConfigError::ConfigError;
};

/// Base class for runtime numerical failures (maps to CLI exit code 3).
struct NumericalError : Error {
  using Error::Error;
};

/// Root iteration failed to converge within the configured cap.
struct NonConvergence : NumericalError {
  using NumericalError::NumericalError;
};

/// Polynomial arithmetic would exceed the configured maximum degree.
struct DegreeOverflow : NumericalError {
  using NumericalError::NumericalError;
};

/// Series expansion around z = 0 requested for a function with Q(0) = 0.
struct SingularAtOrigin : NumericalError {
  using NumericalError::NumericalError;
};

/// Tail shift requested with head values inconsistent with the series.
struct NotDivisible : NumericalError {
  using NumericalError::NumericalError;
};

/// Coincident propagating factors z1 = z2 where a simple pair was required.
struct DegenerateKernel : NumericalError {
  using NumericalError::NumericalError;
};

/// Secular root search produced fewer certified eigenpairs than expected.
struct MissedRoots : NumericalError {
  using NumericalError::NumericalError;
};

/// A zero or pole of the integrand lies on the winding contour.
struct ContourHitsZero : NumericalError {
  using NumericalError::NumericalError;
};

/// Contour quadrature failed to stabilise or disagrees with the zero count.
struct QuadratureUnstable : NumericalError {
  using NumericalError::NumericalError;
};

/// Characteristic-polynomial interpolation lost too much precision.
struct InterpolationIllConditioned : NumericalError {
  using NumericalError::NumericalError;
};

/// Inverse iteration failed to reach the requested residual.
struct SlowConvergence : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace gflat

#endif
