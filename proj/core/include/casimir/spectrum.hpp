#pragma once

// Log-determinant spectral density of a two-plate cavity:
//
//   ln det(I - R1 R2 e^{-2 a rho3}) = ln(1 - tr(R1R2) x + det(R1R2) x^2),
//   x = e^{-2 a rho3}.

#include "casimir/matrix2.hpp"
#include "casimir/media.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

/// det(I - a) = 1 - tr(a) + det(a).
double det_one_minus(const Matrix2& a) noexcept;

struct RoundTrip {
  double trace_r1r2 = 0.0;
  double det_r1r2 = 0.0;
  double rho3 = 0.0;
};

RoundTrip round_trip(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                     double rho3);

/// 1 - tr x + det x^2, evaluated without cancellation near x = 1.
double log_argument(const RoundTrip& rt, double gap);

/// ln of log_argument. Throws SpectralPositivityError (carrying `where`) if
/// the argument is not positive.
double log_integrand(const RoundTrip& rt, double gap, const SpectralPoint& where = {});

/// d/d(gap) of log_integrand.
double log_integrand_gap_derivative(const RoundTrip& rt, double gap,
                                    const SpectralPoint& where = {});

}  // namespace casimir
