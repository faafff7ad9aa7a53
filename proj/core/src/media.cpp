#include "casimir/media.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

SpectralPointError::SpectralPointError(const std::string& what,
                                       const SpectralPoint& point)
    : std::runtime_error(what + " at " + describe(point)), point_(point) {}

SpectralPositivityError::SpectralPositivityError(const SpectralPoint& point,
                                                 double argument)
    : SpectralPointError(
          "non-positive log-determinant argument " + std::to_string(argument),
          point),
      argument_(argument) {}

ConvergenceError::ConvergenceError(const std::string& what,
                                   double partial_value, double error_estimate)
    : std::runtime_error(what), partial_value_(partial_value),
      error_estimate_(error_estimate) {}

std::string describe(const SpectralPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(xi=" << p.xi << ", k_perp=" << p.k_perp << ", phi=" << p.phi << ")";
  return os.str();
}

void validate(const SpectralPoint& p, bool allow_origin) {
  if (!std::isfinite(p.xi) || !std::isfinite(p.k_perp) || !std::isfinite(p.phi))
    throw DomainError("spectral point has non-finite components");
  if (p.xi < 0.0) throw DomainError("spectral point: xi must be >= 0");
  if (p.k_perp < 0.0) throw DomainError("spectral point: k_perp must be >= 0");
  if (!allow_origin && p.xi == 0.0 && p.k_perp == 0.0)
    throw DomainError("degenerate spectral point xi = k_perp = 0");
}

void validate(const UniaxialMedium& m) {
  if (!(m.eps_parallel > 0.0) || !std::isfinite(m.eps_parallel))
    throw DomainError("eps_parallel must be positive and finite");
  if (!(m.eps_perp > 0.0) || !std::isfinite(m.eps_perp))
    throw DomainError("eps_perp must be positive and finite");
  if (!std::isfinite(m.axis_angle))
    throw DomainError("axis_angle must be finite");
}

namespace {

struct Validator {
  void operator()(const IdealConductor&) const {}
  void operator()(const Isotropic& m) const {
    if (!(m.eps > 0.0) || !std::isfinite(m.eps))
      throw DomainError("isotropic permittivity must be positive and finite");
  }
  void operator()(const UniaxialMedium& m) const { validate(m); }
  void operator()(const PerfectlyAnisotropic& m) const {
    if (!std::isfinite(m.axis_angle))
      throw DomainError("axis_angle must be finite");
  }
};

struct Describer {
  std::string operator()(const IdealConductor&) const { return "ideal"; }
  std::string operator()(const Isotropic& m) const {
    std::ostringstream os;
    os << "isotropic(eps=" << m.eps << ")";
    return os.str();
  }
  std::string operator()(const UniaxialMedium& m) const {
    std::ostringstream os;
    os << "uniaxial(eps_par=" << m.eps_parallel << ", eps_perp=" << m.eps_perp
       << ", axis=" << m.axis_angle << ")";
    return os.str();
  }
  std::string operator()(const PerfectlyAnisotropic& m) const {
    std::ostringstream os;
    os << "perfect-aniso(axis=" << m.axis_angle << ")";
    return os.str();
  }
};

}  // namespace

void validate(const PlateModel& plate) { std::visit(Validator{}, plate); }

bool is_rotation_invariant(const PlateModel& plate) {
  if (std::holds_alternative<IdealConductor>(plate)) return true;
  if (std::holds_alternative<Isotropic>(plate)) return true;
  if (const auto* m = std::get_if<UniaxialMedium>(&plate))
    return m->is_isotropic();
  return false;
}

std::string describe(const PlateModel& plate) {
  return std::visit(Describer{}, plate);
}

double cavity_momentum(const SpectralPoint& p, double eps3) {
  if (!(eps3 > 0.0) || !std::isfinite(eps3))
    throw DomainError("cavity permittivity must be positive and finite");
  validate(p, /*allow_origin=*/true);
  return std::sqrt(eps3 * p.xi * p.xi + p.k_perp * p.k_perp);
}

AxialMomenta axial_momenta(const SpectralPoint& p, const UniaxialMedium& m,
                           double angle_offset) {
  validate(m);
  validate(p, /*allow_origin=*/true);
  const double xi2 = p.xi * p.xi;
  const double k2 = p.k_perp * p.k_perp;
  const double c = std::cos(relative_azimuth(p.phi, angle_offset, m.axis_angle));

  AxialMomenta out;
  out.rho = std::sqrt(m.eps_perp * xi2 + k2);
  if (m.is_isotropic()) {
    out.rho_tilde = out.rho;
    return out;
  }
  // eps_par xi^2 + k^2 + k^2 (eps_par/eps_perp - 1) cos^2 regrouped as a sum of
  // nonnegative terms.
  const double s = std::sin(relative_azimuth(p.phi, angle_offset, m.axis_angle));
  const double radicand =
      m.eps_parallel * xi2 + k2 * (s * s + (m.eps_parallel / m.eps_perp) * c * c);
  if (!(radicand >= 0.0))
    throw SpectralPointError("invalid extraordinary radicand", p);
  out.rho_tilde = std::sqrt(radicand);
  return out;
}

}  // namespace casimir
