#include "casimir/reflection.hpp"

#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kClosedFormMinRatio = 0.05;

void require_eps(double eps, const char* what) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw DomainError(std::string(what) + " must be positive and finite");
}

// The uniaxial closed forms subtract terms of order k^7 to leave results of
// order xi^2 k^5 as xi -> 0; extended precision keeps the absolute error near
// 1e-15 down to xi/k ~ 0.05, where the dispatcher hands over to the solve.
using real = long double;

// Quantities shared by the uniaxial closed forms, at relative azimuth psi.
struct UniaxialTerms {
  real k2, s2, c2, cs, cos2;
  real r1, r3, rt;
  real x1, x3;  // rho1^2 - k^2 = eps_perp xi^2, rho3^2 - k^2 = eps3 xi^2
  real e_par, e_perp;
  real a, b;    // A and A + eps_perp rho_tilde^2
  real n;       // common denominator
};

UniaxialTerms uniaxial_terms(const SpectralPoint& p, const UniaxialMedium& m,
                             double eps3, double angle_offset) {
  validate(m);
  const real psi = relative_azimuth(p.phi, angle_offset, m.axis_angle);
  const real c = std::cos(psi);
  const real s = std::sin(psi);
  const real xi2 = static_cast<real>(p.xi) * p.xi;

  UniaxialTerms t{};
  t.k2 = static_cast<real>(p.k_perp) * p.k_perp;
  t.s2 = s * s;
  t.c2 = c * c;
  t.cs = c * s;
  t.cos2 = std::cos(2 * psi);
  t.e_par = m.eps_parallel;
  t.e_perp = m.eps_perp;
  t.x1 = t.e_perp * xi2;
  t.x3 = eps3 * xi2;
  t.r1 = std::sqrt(t.x1 + t.k2);
  t.r3 = std::sqrt(t.x3 + t.k2);
  t.rt = m.is_isotropic()
             ? t.r1
             : std::sqrt(t.e_par * xi2 + t.k2 * (t.s2 + (t.e_par / t.e_perp) * t.c2));
  t.a = -t.k2 * (t.e_par - (t.e_par - t.e_perp) * t.s2);
  t.b = t.a + t.e_perp * t.rt * t.rt;

  const real k2s2 = t.k2 * t.s2;
  const real rt2 = t.rt * t.rt;
  t.n = (t.r1 + t.r3) *
        (k2s2 * (t.r3 + t.rt) * t.b +
         t.r1 * (t.e_perp * t.r3 * t.r3 * (k2s2 - rt2) - t.r3 * t.rt * t.b +
                 t.k2 * t.c2 * (t.k2 * (t.e_par - t.e_perp) * t.s2 + t.e_perp * rt2)));
  if (t.n == 0 || !std::isfinite(t.n))
    throw SingularDenominatorError("uniaxial closed form: zero denominator", p);
  return t;
}

// `ee_last_sign` is +1 for the corrected r_ee and -1 for the uncorrected one.
ReflectionMatrix uniaxial_from_terms(const UniaxialTerms& t, real ee_last_sign) {
  const real k2s2 = t.k2 * t.s2;
  const real r1 = t.r1, r3 = t.r3, rt = t.rt;
  const real r1s = r1 * r1, r3s = r3 * r3, rt2 = rt * rt, rt3 = rt2 * rt;
  const real de = t.e_par - t.e_perp;
  const real sq3 = std::sqrt(t.x3);

  const real ee =
      (k2s2 * r3 * (r3 - rt) * t.b + r1s * r3 * rt * t.b +
       r1 * (k2s2 * t.e_perp * r3 * t.x3 - t.a * (k2s2 + t.cos2 * r3s) * rt -
             t.e_perp * r3 * t.x3 * rt2 - t.e_perp * (k2s2 + t.cos2 * r3s) * rt3) -
       r1s * (t.k2 * t.c2 * (t.k2 * de * t.s2 + t.e_perp * rt2) +
              r3s * (k2s2 * (t.e_perp * t.cos2 - 2 * t.e_par * t.c2) -
                     ee_last_sign * t.e_perp * t.cos2 * rt2))) /
      t.n;

  const real em = 2 / t.n * t.cs * r3 * sq3 *
                  (-k2s2 * de * t.x1 + t.a * r1 * rt - t.e_perp * t.x1 * rt2 +
                   t.e_perp * r1 * rt3);

  const real me = -2 / t.n * t.cs * r1 * r3 * sq3 * (r1 - rt) * t.b;

  const real mm =
      (k2s2 * (-t.a * r3s + t.e_perp * r1 * r3 * t.x3 +
               r1s * (t.k2 * de * t.c2 - (2 * t.e_par * t.c2 - t.e_perp * t.cos2) * r3s)) +
       t.a * (k2s2 * r1 - (k2s2 - r1s) * r3 + t.cos2 * r1 * r3s) * rt +
       t.e_perp * (-k2s2 * r3s - r1 * r3 * t.x3 + r1s * (t.k2 * t.c2 - t.cos2 * r3s)) * rt2 +
       t.e_perp * (k2s2 * r1 + (r1s - k2s2) * r3 + t.cos2 * r1 * r3s) * rt3) /
      t.n;

  return {static_cast<double>(ee), static_cast<double>(em), static_cast<double>(me),
          static_cast<double>(mm)};
}

ReflectionMatrix perfectly_anisotropic_impl(const SpectralPoint& p,
                                            double angle_offset, double mm_sign) {
  validate(p);
  const double psi = p.phi + angle_offset;
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  const double k2s2 = p.k_perp * p.k_perp * s * s;
  const double xi2 = p.xi * p.xi;
  const double q = std::hypot(p.k_perp, p.xi);
  const double w = std::sqrt(k2s2 + xi2);  // extraordinary decay constant
  const double den = k2s2 + xi2 + q * w;
  if (den == 0.0)
    throw SingularDenominatorError("perfectly anisotropic closed form", p);

  ReflectionMatrix r;
  r.ee = (k2s2 + xi2 * (1.0 - 2.0 * c * c) - q * w) / den;
  r.em = 2.0 * p.xi * q * c * s / den;
  r.me = r.em;
  r.mm = (-k2s2 - mm_sign * xi2 * (1.0 - 2.0 * c * c) - q * w) / den;
  return r;
}

}  // namespace

ReflectionMatrix reflect_ideal() { return {-1.0, 0.0, 0.0, -1.0}; }

ReflectionMatrix reflect_isotropic(const SpectralPoint& p, double eps_plate,
                                   double eps3) {
  require_eps(eps_plate, "plate permittivity");
  require_eps(eps3, "cavity permittivity");
  validate(p);
  const double r1 = std::sqrt(eps_plate * p.xi * p.xi + p.k_perp * p.k_perp);
  const double r3 = cavity_momentum(p, eps3);
  ReflectionMatrix r;
  r.ee = (r3 - r1) / (r1 + r3);
  r.mm = (eps3 * r1 - eps_plate * r3) / (eps3 * r1 + eps_plate * r3);
  return r;
}

ReflectionMatrix reflect_uniaxial_closed(const SpectralPoint& p,
                                         const UniaxialMedium& m, double eps3,
                                         double angle_offset) {
  require_eps(eps3, "cavity permittivity");
  validate(p);
  return uniaxial_from_terms(uniaxial_terms(p, m, eps3, angle_offset), 1.0);
}

ReflectionMatrix reflect_perfectly_anisotropic(const SpectralPoint& p,
                                               double angle_offset) {
  return perfectly_anisotropic_impl(p, angle_offset, 1.0);
}

ReflectionMatrix reflect(const SpectralPoint& p, const PlateModel& plate,
                         double eps3, double angle_offset, ReflectionRoute route) {
  if (route == ReflectionRoute::boundary_solve)
    return boundary_solve_reflection(p, plate, eps3, angle_offset);

  if (std::holds_alternative<IdealConductor>(plate)) {
    validate(p);
    return reflect_ideal();
  }
  if (const auto* iso = std::get_if<Isotropic>(&plate))
    return reflect_isotropic(p, iso->eps, eps3);
  if (const auto* uni = std::get_if<UniaxialMedium>(&plate)) {
    if (uni->is_isotropic()) {
      validate(*uni);
      return reflect_isotropic(p, uni->eps_parallel, eps3);
    }
    // The closed form loses digits like (k_perp/xi)^2 as xi -> 0.
    if (p.xi < kClosedFormMinRatio * p.k_perp)
      return boundary_solve_reflection(p, plate, eps3, angle_offset);
    return reflect_uniaxial_closed(p, *uni, eps3, angle_offset);
  }
  const auto& perfect = std::get<PerfectlyAnisotropic>(plate);
  // The closed form assumes a vacuum cavity.
  if (eps3 != 1.0) return boundary_solve_reflection(p, plate, eps3, angle_offset);
  return reflect_perfectly_anisotropic(p, angle_offset - perfect.axis_angle);
}

namespace uncorrected {

ReflectionMatrix uniaxial_closed(const SpectralPoint& p, const UniaxialMedium& m,
                                 double eps3, double angle_offset) {
  require_eps(eps3, "cavity permittivity");
  validate(p);
  return uniaxial_from_terms(uniaxial_terms(p, m, eps3, angle_offset), -1.0);
}

ReflectionMatrix perfectly_anisotropic(const SpectralPoint& p,
                                       double angle_offset) {
  return perfectly_anisotropic_impl(p, angle_offset, -1.0);
}

CVec3 extraordinary_polarization(const SpectralPoint& p, const UniaxialMedium& m) {
  const AxialMomenta mom = axial_momenta(p, m, 0.0);
  const double psi = p.phi - m.axis_angle;
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  const double k = p.k_perp;
  const double rt = mom.rho_tilde;
  using namespace std::complex_literals;
  return {m.eps_perp * (k * k * s * s - rt * rt), k * k * m.eps_parallel * c * s,
          1i * k * m.eps_parallel * c * rt};
}

}  // namespace uncorrected

}  // namespace casimir
