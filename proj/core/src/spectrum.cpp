#include "casimir/spectrum.hpp"

#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

double det_one_minus(const Matrix2& a) noexcept {
  return 1.0 - a.trace() + a.det();
}

RoundTrip round_trip(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                     double rho3) {
  const Matrix2 m1 = r1.matrix();
  const Matrix2 m2 = r2.matrix();
  return {(m1 * m2).trace(), m1.det() * m2.det(), rho3};
}

namespace {

void require_gap(double gap) {
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw DomainError("gap must be positive and finite");
}

}  // namespace

double log_argument(const RoundTrip& rt, double gap) {
  require_gap(gap);
  const double t = rt.trace_r1r2;
  const double d = rt.det_r1r2;
  const double y = 2.0 * gap * rt.rho3;
  const double x = std::exp(-y);
  if (x < 0.5) return 1.0 + x * (d * x - t);
  // Near x = 1 expand in u = 1 - x; for ideal plates 1 - t + d and t - 2d
  // vanish exactly and only d u^2 is left.
  const double u = -std::expm1(-y);
  return (1.0 - t + d) + u * (t - 2.0 * d) + d * u * u;
}

double log_integrand(const RoundTrip& rt, double gap, const SpectralPoint& where) {
  require_gap(gap);
  const double y = 2.0 * gap * rt.rho3;
  const double x = std::exp(-y);
  if (x < 0.5) {
    const double z = x * (rt.det_r1r2 * x - rt.trace_r1r2);
    if (!(z > -1.0)) throw SpectralPositivityError(where, 1.0 + z);
    return std::log1p(z);
  }
  const double arg = log_argument(rt, gap);
  if (!(arg > 0.0)) throw SpectralPositivityError(where, arg);
  return std::log(arg);
}

double log_integrand_gap_derivative(const RoundTrip& rt, double gap,
                                    const SpectralPoint& where) {
  const double arg = log_argument(rt, gap);
  if (!(arg > 0.0)) throw SpectralPositivityError(where, arg);
  const double x = std::exp(-2.0 * gap * rt.rho3);
  return 2.0 * rt.rho3 * x * (rt.trace_r1r2 - 2.0 * rt.det_r1r2 * x) / arg;
}

}  // namespace casimir
