#pragma once

// Dielectric plate models and axial-momentum kinematics on the
// imaginary-frequency axis.
//
// Conventions used throughout the library:
//   xi      imaginary frequency, xi = -i omega / c (inverse length)
//   k_perp  magnitude of the wavevector component parallel to the plates
//   phi     azimuth of the in-plane wavevector, measured from the x axis
// Permittivities are real, frequency-independent constants.

#include <string>
#include <variant>

namespace casimir {

struct SpectralPoint {
  double xi = 0.0;
  double k_perp = 0.0;
  double phi = 0.0;
};

/// Checks the ranges of a spectral point; `allow_origin` admits xi = k_perp = 0.
void validate(const SpectralPoint& p, bool allow_origin = false);

/// Uniaxial dielectric with its optic axis lying in the plate plane.
///
/// `axis_angle` is the in-plane angle of the optic axis in the plate's own
/// frame. A plate rotated by an extra `angle_offset` sees the in-plane
/// wavevector at the relative azimuth phi + angle_offset - axis_angle.
struct UniaxialMedium {
  double eps_parallel = 1.0;  // along the optic axis
  double eps_perp = 1.0;      // across the optic axis
  double axis_angle = 0.0;

  bool is_isotropic() const noexcept { return eps_parallel == eps_perp; }
};

void validate(const UniaxialMedium& m);

struct IdealConductor {};

struct Isotropic {
  double eps = 1.0;
};

/// Limit eps_parallel = 1, eps_perp -> infinity: transparent along the optic
/// axis, perfectly conducting across it.
struct PerfectlyAnisotropic {
  double axis_angle = 0.0;
};

using PlateModel =
    std::variant<IdealConductor, Isotropic, UniaxialMedium, PerfectlyAnisotropic>;

void validate(const PlateModel& plate);

/// True when the plate's response does not depend on the azimuth.
bool is_rotation_invariant(const PlateModel& plate);

std::string describe(const PlateModel& plate);

struct AxialMomenta {
  double rho = 0.0;        // ordinary wave
  double rho_tilde = 0.0;  // extraordinary wave
};

/// sqrt(eps3 xi^2 + k_perp^2).
double cavity_momentum(const SpectralPoint& p, double eps3);

/// Ordinary and extraordinary decay constants inside a uniaxial plate.
///
///   rho       = sqrt(eps_perp xi^2 + k^2)
///   rho_tilde = sqrt(eps_par xi^2 + k^2 + k^2 (eps_par/eps_perp - 1) cos^2(psi))
///
/// with psi = phi + angle_offset - m.axis_angle.
AxialMomenta axial_momenta(const SpectralPoint& p, const UniaxialMedium& m,
                           double angle_offset);

/// Azimuth of the in-plane wavevector relative to the optic axis.
inline double relative_azimuth(double phi, double angle_offset,
                               double axis_angle) noexcept {
  return phi + angle_offset - axis_angle;
}

}  // namespace casimir
