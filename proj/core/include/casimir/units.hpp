#pragma once

#include <string>

namespace casimir {

/// hbar * c in J m.
inline constexpr double kHbarC = 3.16152677e-26;

/// `si`: lengths in metres, energies in joules.
/// `natural`: hbar = c = 1, lengths in whatever unit the gap is given in.
enum class Units { si, natural };

enum class Quantity { energy_per_area, pressure, torque_per_area, energy };

inline double hbar_c(Units u) noexcept { return u == Units::si ? kHbarC : 1.0; }

std::string unit_label(Quantity q, Units u);
std::string to_string(Units u);

}  // namespace casimir
