#pragma once

// Finite square plates of side 2b at separation a. Straight-line paths
// between the plates weight the ideal energy density by
//
//   eta(c) = 1/(4 pi c^2) int int_{[-2c,2c]^2} (2c-|u|)(2c-|v|) / (u^2+v^2+1)^2 du dv,
//
// c = b/a, so that E = E_ideal(a) (2b)^2 eta(b/a) and eta -> 1 as c -> inf.

#include <memory>

#include "casimir/energy.hpp"

namespace casimir {

/// Direct evaluation by adaptive quadrature (reference accuracy ~1e-12).
double finite_plate_efficiency(double b_over_a);

/// Monotone cubic interpolant of ln(eta) against ln(c), built once.
class EfficiencyTable {
 public:
  EfficiencyTable(double c_min = 1e-3, double c_max = 1e4, int points = 1121);

  /// Interpolated inside [c_min, c_max]; direct evaluation outside.
  double operator()(double b_over_a) const;

  double c_min() const noexcept { return c_min_; }
  double c_max() const noexcept { return c_max_; }

 private:
  struct Impl;
  double c_min_, c_max_;
  std::shared_ptr<const Impl> impl_;
};

/// Shared immutable table.
const EfficiencyTable& default_efficiency_table();

enum class EfficiencyEvaluation { table, direct };

/// E = -pi^2 hbar c / (720 a^3) (2b)^2 eta(b/a).
EnergyResult finite_plate_energy(double a, double b, Units units = Units::si,
                                 EfficiencyEvaluation how = EfficiencyEvaluation::table);

}  // namespace casimir
