#pragma once

// 2x2 TE/TM reflection matrices for the plate models.
//
// Geometry: the plate fills z < 0, the cavity z > 0. The incident wave
// travels towards the plate (k_z = -i rho3), the reflected wave away from it
// (k_z = +i rho3). Polarization vectors are electric-field directions:
//
//   lambda_E   = (sin phi, -cos phi, 0)
//   lambda_+-M = (rho3 cos phi, rho3 sin phi, +-i k_perp) / sqrt(rho3^2 - k_perp^2)
//
// with lambda_-M carried by the incident wave and lambda_+M by the reflected
// wave. In this basis a perfect conductor reflects with -1 on both channels,
// and the Fresnel coefficients take their usual form. The second plate of a
// cavity is the mirror image of the first, so the same matrices apply with
// the azimuth shifted by the relative rotation.

#include <array>
#include <complex>

#include "casimir/matrix2.hpp"
#include "casimir/media.hpp"

namespace casimir {

/// r_ij is the reflected amplitude of polarization j for a unit incident
/// wave of polarization i. As a matrix acting on (TE, TM) amplitude columns:
///
///   [ r_ee  r_me ]
///   [ r_em  r_mm ]
struct ReflectionMatrix {
  double ee = 0.0;
  double em = 0.0;
  double me = 0.0;
  double mm = 0.0;

  constexpr Matrix2 matrix() const noexcept { return {ee, me, em, mm}; }
  static constexpr ReflectionMatrix from_matrix(const Matrix2& m) noexcept {
    return {m.a11, m.a21, m.a12, m.a22};
  }
  friend constexpr bool operator==(const ReflectionMatrix&,
                                   const ReflectionMatrix&) = default;
};

enum class ReflectionRoute {
  closed_form,     // algebraic expressions, validated against the solve
  boundary_solve,  // tangential-field matching, the reference path
};

/// Perfect conductor: -identity (tangential E vanishes on the surface).
ReflectionMatrix reflect_ideal();

/// Fresnel coefficients of an isotropic dielectric half-space.
ReflectionMatrix reflect_isotropic(const SpectralPoint& p, double eps_plate,
                                   double eps3);

/// Closed-form reflection matrix of a uniaxial half-space whose optic axis
/// lies in the surface. Throws SingularDenominatorError if the common
/// denominator vanishes (xi = 0).
ReflectionMatrix reflect_uniaxial_closed(const SpectralPoint& p,
                                         const UniaxialMedium& m, double eps3,
                                         double angle_offset);

/// Closed form for eps_par = eps3 = 1, eps_perp -> infinity, at relative
/// azimuth phi + angle_offset.
ReflectionMatrix reflect_perfectly_anisotropic(const SpectralPoint& p,
                                               double angle_offset);

/// Reference route: builds the plane-wave basis on both sides of the surface
/// and solves the four tangential continuity conditions for each incident
/// polarization. Works for every plate model and any eps3.
ReflectionMatrix boundary_solve_reflection(const SpectralPoint& p,
                                           const PlateModel& plate, double eps3,
                                           double angle_offset);

/// Dispatches to the closed form or the boundary solve for `plate`. Uniaxial
/// plates fall back to the boundary solve when xi < 0.05 k_perp, where the
/// closed form cancels catastrophically; perfectly anisotropic plates fall
/// back when eps3 != 1.
ReflectionMatrix reflect(const SpectralPoint& p, const PlateModel& plate,
                         double eps3, double angle_offset,
                         ReflectionRoute route = ReflectionRoute::closed_form);

using CVec3 = std::array<std::complex<double>, 3>;

/// One plane wave at the surface: wavevector, electric polarization and the
/// magnetic direction b = k x e.
struct PlaneWave {
  CVec3 k{};
  CVec3 e{};
  CVec3 b{};
};

/// Plane waves entering the tangential matching at a uniaxial surface.
/// Cavity polarizations follow the header conventions; the transmitted
/// ordinary and extraordinary polarizations have unit Hermitian norm.
struct PolarizationBasis {
  PlaneWave incident_te;
  PlaneWave incident_tm;
  PlaneWave reflected_te;
  PlaneWave reflected_tm;
  PlaneWave ordinary;
  PlaneWave extraordinary;
  std::array<double, 3> optic_axis{};
};

PolarizationBasis polarization_basis(const SpectralPoint& p,
                                     const UniaxialMedium& m, double eps3,
                                     double angle_offset);

/// Dielectric tensor of `m` rotated by `angle_offset`, in the cavity frame.
std::array<std::array<double, 3>, 3> dielectric_tensor(const UniaxialMedium& m,
                                                       double angle_offset);

/// Closed forms with the two sign errors they were originally written with.
/// Kept for comparison tests against the boundary solve only; nothing in
/// the library evaluates energies through them.
namespace uncorrected {

/// r_ee has its final `eps_perp cos(2 psi) rho_tilde^2` term with the wrong
/// sign; the other three entries are identical to reflect_uniaxial_closed.
ReflectionMatrix uniaxial_closed(const SpectralPoint& p, const UniaxialMedium& m,
                                 double eps3, double angle_offset);

/// r_mm carries +xi^2 (1 - 2cos^2 psi) instead of -xi^2 (1 - 2cos^2 psi).
ReflectionMatrix perfectly_anisotropic(const SpectralPoint& p,
                                       double angle_offset);

/// Extraordinary polarization with the sign of its y component flipped, as
/// originally written for an optic axis along x. Fails k.D = 0.
CVec3 extraordinary_polarization(const SpectralPoint& p,
                                 const UniaxialMedium& m);

}  // namespace uncorrected

}  // namespace casimir
