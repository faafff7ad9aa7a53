#pragma once

// Casimir energy, pressure and torque of a parallel-plate cavity.
//
//   E/A = hbar c / (8 pi^3) int k dk int_0^{2pi} dphi int_0^inf dxi
//         ln(1 - tr(R1R2) e^{-2a rho3} + det(R1R2) e^{-4a rho3})
//
// R1 is evaluated at azimuth phi and R2 at phi + chi. The (xi, k) quarter
// plane is integrated in polar coordinates xi = p cos(theta),
// k = p sin(theta). With frequency-independent permittivities the
// reflection matrices depend on direction only, so they are computed once
// per (theta, phi) and the radial integral runs over the exponentials.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "casimir/media.hpp"
#include "casimir/reflection.hpp"
#include "casimir/units.hpp"

namespace casimir {

struct InfinitePlates {};

struct FiniteSquare {
  double half_side = 1.0;  // plates span (-b, b)^2
};

using Geometry = std::variant<InfinitePlates, FiniteSquare>;

struct CavityConfig {
  double gap = 1.0;  // metres in SI mode
  double eps_cavity = 1.0;
  PlateModel plate1 = IdealConductor{};
  PlateModel plate2 = IdealConductor{};
  double chi = 0.0;  // rotation of plate 2 relative to plate 1
  Geometry geometry = InfinitePlates{};
};

void validate(const CavityConfig& cfg);

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-300;
  int max_refinement_levels = 8;
  int phi_nodes = 16;     // trapezoid nodes on [0, 2pi), even, >= 8
  int theta_nodes = 16;   // starting Gauss-Legendre order on [0, pi/2]
  int radial_nodes = 32;  // starting Gauss-Legendre order on the mapped p axis
  double radial_map_scale = 1.0;  // p = s t / (1 - t), s = scale / gap
  ReflectionRoute route = ReflectionRoute::closed_form;
  unsigned threads = 0;  // 0: hardware concurrency
};

void validate(const QuadratureSpec& q);

struct EnergyResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  Units units = Units::si;
  std::string unit_label;
  /// Error estimate after each azimuthal refinement level.
  std::vector<double> level_errors;
};

/// -pi^2 hbar c / (720 a^3).
EnergyResult energy_ideal_closed(double gap, Units units = Units::si);

EnergyResult energy_per_area(const CavityConfig& cfg, const QuadratureSpec& q = {},
                             Units units = Units::si);

/// -d(E/A)/da from the analytically differentiated integrand. Negative
/// values are attractive.
EnergyResult pressure(const CavityConfig& cfg, const QuadratureSpec& q = {},
                      Units units = Units::si);

/// dE/dchi by Richardson-extrapolated central differences (h = 1e-3 rad) on
/// a quadrature grid shared by all shifted angles. Throws DomainError if
/// both plates are rotation invariant.
EnergyResult torque_per_area(const CavityConfig& cfg, const QuadratureSpec& q = {},
                             Units units = Units::si);

struct NormalizedPoint {
  double chi = 0.0;
  double ratio = 0.0;  // E(chi) / E_ideal
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

std::vector<NormalizedPoint> normalized_energy_sweep(const CavityConfig& cfg,
                                                     const std::vector<double>& chis,
                                                     const QuadratureSpec& q = {});

inline constexpr double kTorqueStep = 1e-3;

}  // namespace casimir
