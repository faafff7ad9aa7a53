#pragma once

#include <stdexcept>
#include <string>

#include "casimir/media.hpp"

namespace casimir {

/// Invalid argument to a physics routine (nonpositive gap, permittivity, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that happen while evaluating at a specific spectral point.
class SpectralPointError : public std::runtime_error {
 public:
  SpectralPointError(const std::string& what, const SpectralPoint& point);
  const SpectralPoint& point() const noexcept { return point_; }

 private:
  SpectralPoint point_;
};

/// A closed-form reflection amplitude hit a zero denominator.
class SingularDenominatorError : public SpectralPointError {
 public:
  using SpectralPointError::SpectralPointError;
};

/// The boundary-condition system could not be solved.
class SingularSystemError : public SpectralPointError {
 public:
  using SpectralPointError::SpectralPointError;
};

/// 1 - tr(R1R2)e^{-2a rho3} + det(R1R2)e^{-4a rho3} <= 0: the log is undefined.
class SpectralPositivityError : public SpectralPointError {
 public:
  SpectralPositivityError(const SpectralPoint& point, double argument);
  double argument() const noexcept { return argument_; }

 private:
  double argument_;
};

/// Adaptive quadrature ran out of refinement levels.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value,
                   double error_estimate);
  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

std::string describe(const SpectralPoint& point);

}  // namespace casimir
