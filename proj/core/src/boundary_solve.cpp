#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

namespace {

using cd = std::complex<double>;
using namespace std::complex_literals;

// Tangential field components [E_x, E_y, B_x, B_y] of one wave.
using Tangential = Eigen::Vector4cd;

Tangential tangential(const PlaneWave& w) {
  return {w.e[0], w.e[1], w.b[0], w.b[1]};
}

struct CavityWaves {
  PlaneWave incident_te, incident_tm, reflected_te, reflected_tm;
};

// b vectors are k x e written out term by term; a numeric cross product
// cancels badly once xi << k_perp.
CavityWaves cavity_waves(const SpectralPoint& p, double eps3) {
  const double r3 = cavity_momentum(p, eps3);
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  const double k = p.k_perp;
  const double root = std::sqrt(eps3) * p.xi;  // sqrt(rho3^2 - k^2)
  if (!(root > 0.0))
    throw SingularSystemError("TM polarization undefined at xi = 0", p);

  CavityWaves w;
  w.incident_te.k = {k * c, k * s, -1i * r3};
  w.incident_te.e = {s, -c, 0.0};
  w.incident_te.b = {-1i * r3 * c, -1i * r3 * s, -k};

  w.reflected_te.k = {k * c, k * s, 1i * r3};
  w.reflected_te.e = {s, -c, 0.0};
  w.reflected_te.b = {1i * r3 * c, 1i * r3 * s, -k};

  w.incident_tm.k = w.incident_te.k;
  w.incident_tm.e = {r3 * c / root, r3 * s / root, -1i * k / root};
  w.incident_tm.b = {1i * root * s, -1i * root * c, 0.0};

  w.reflected_tm.k = w.reflected_te.k;
  w.reflected_tm.e = {r3 * c / root, r3 * s / root, 1i * k / root};
  w.reflected_tm.b = {-1i * root * s, 1i * root * c, 0.0};
  return w;
}

void normalize(PlaneWave& w) {
  double norm2 = 0.0;
  for (const cd& x : w.e) norm2 += std::norm(x);
  const double inv = 1.0 / std::sqrt(norm2);
  for (cd& x : w.e) x *= inv;
  for (cd& x : w.b) x *= inv;
}

struct MediumWaves {
  PlaneWave ordinary, extraordinary;
  std::array<double, 3> axis{};
};

MediumWaves uniaxial_waves(const SpectralPoint& p, const UniaxialMedium& m,
                           double angle_offset) {
  const AxialMomenta mom = axial_momenta(p, m, angle_offset);
  const double beta = m.axis_angle - angle_offset;
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double psi = relative_azimuth(p.phi, angle_offset, m.axis_angle);
  const double cpsi = std::cos(psi);
  const double spsi = std::sin(psi);
  const double k = p.k_perp;
  const double xi2 = p.xi * p.xi;
  const double kc = k * std::cos(p.phi);
  const double ks = k * std::sin(p.phi);

  MediumWaves w;
  w.axis = {cb, sb, 0.0};

  // Ordinary: e = O x k, b = k x e = O (k.k) - k (k.O).
  {
    const double rho = mom.rho;
    PlaneWave& o = w.ordinary;
    o.k = {kc, ks, -1i * rho};
    o.e = {-1i * rho * sb, 1i * rho * cb, k * spsi};
    const double kk = -m.eps_perp * xi2;
    const double ko = k * cpsi;
    for (int i = 0; i < 3; ++i) o.b[i] = w.axis[i] * kk - o.k[i] * ko;
    normalize(o);
  }
  // Extraordinary: e is eps^-1 D with D = (k.k) O - (k.O) k, rescaled by
  // -eps_perp; b = k x e = -eps_perp xi^2 (O x k).
  {
    const double rt = mom.rho_tilde;
    PlaneWave& e = w.extraordinary;
    e.k = {kc, ks, -1i * rt};
    const double along = m.eps_perp * xi2 + k * k * cpsi * cpsi;
    const double kcos = k * cpsi;
    // k_e minus its projection on the axis.
    const std::array<cd, 3> across = {-k * spsi * sb, k * spsi * cb, -1i * rt};
    for (int i = 0; i < 3; ++i) e.e[i] = along * w.axis[i] + kcos * across[i];
    const std::array<cd, 3> oxk = {-1i * rt * sb, 1i * rt * cb, k * spsi};
    for (int i = 0; i < 3; ++i) e.b[i] = -m.eps_perp * xi2 * oxk[i];
    normalize(e);
  }
  return w;
}

ReflectionMatrix solve(const SpectralPoint& p, const CavityWaves& cav,
                       const Tangential& t1, const Tangential& t2) {
  Eigen::Matrix4cd a;
  a.col(0) = tangential(cav.reflected_te);
  a.col(1) = tangential(cav.reflected_tm);
  a.col(2) = -t1;
  a.col(3) = -t2;

  // Column equilibration; the unknowns are unscaled afterwards.
  Eigen::Vector4d scale;
  for (int j = 0; j < 4; ++j) {
    const double n = a.col(j).cwiseAbs().maxCoeff();
    if (!(n > 0.0) || !std::isfinite(n))
      throw SingularSystemError("degenerate boundary-condition column", p);
    scale(j) = 1.0 / n;
    a.col(j) *= scale(j);
  }

  const Eigen::FullPivLU<Eigen::Matrix4cd> lu(a);
  if (!lu.isInvertible())
    throw SingularSystemError("singular boundary-condition system", p);

  Eigen::Matrix<cd, 4, 2> rhs;
  rhs.col(0) = -tangential(cav.incident_te);
  rhs.col(1) = -tangential(cav.incident_tm);
  Eigen::Matrix<cd, 4, 2> x = lu.solve(rhs);
  for (int j = 0; j < 4; ++j) x.row(j) *= scale(j);

  const Eigen::Matrix<cd, 2, 2> r = x.topRows<2>();
  if (!r.allFinite())
    throw SingularSystemError("non-finite reflection amplitudes", p);
  const double mag = std::max(1.0, r.real().cwiseAbs().maxCoeff());
  if (r.imag().cwiseAbs().maxCoeff() > 1e-10 * mag)
    throw SpectralPointError("reflection amplitudes are not real", p);

  // Row: reflected polarization; column: incident polarization.
  ReflectionMatrix out;
  out.ee = r(0, 0).real();
  out.em = r(1, 0).real();
  out.me = r(0, 1).real();
  out.mm = r(1, 1).real();
  return out;
}

}  // namespace

PolarizationBasis polarization_basis(const SpectralPoint& p,
                                     const UniaxialMedium& m, double eps3,
                                     double angle_offset) {
  validate(p);
  const CavityWaves cav = cavity_waves(p, eps3);
  const MediumWaves med = uniaxial_waves(p, m, angle_offset);
  PolarizationBasis basis;
  basis.incident_te = cav.incident_te;
  basis.incident_tm = cav.incident_tm;
  basis.reflected_te = cav.reflected_te;
  basis.reflected_tm = cav.reflected_tm;
  basis.ordinary = med.ordinary;
  basis.extraordinary = med.extraordinary;
  basis.optic_axis = med.axis;
  return basis;
}

std::array<std::array<double, 3>, 3> dielectric_tensor(const UniaxialMedium& m,
                                                       double angle_offset) {
  validate(m);
  const double beta = m.axis_angle - angle_offset;
  const std::array<double, 3> o = {std::cos(beta), std::sin(beta), 0.0};
  std::array<std::array<double, 3>, 3> eps{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      eps[i][j] = (m.eps_parallel - m.eps_perp) * o[i] * o[j];
    eps[i][i] += m.eps_perp;
  }
  return eps;
}

ReflectionMatrix boundary_solve_reflection(const SpectralPoint& p,
                                           const PlateModel& plate, double eps3,
                                           double angle_offset) {
  validate(p);
  validate(plate);
  const CavityWaves cav = cavity_waves(p, eps3);

  if (std::holds_alternative<IdealConductor>(plate)) {
    // Tangential E vanishes; tangential B is unconstrained.
    return solve(p, cav, Tangential(0, 0, 1, 0), Tangential(0, 0, 0, 1));
  }

  if (const auto* perfect = std::get_if<PerfectlyAnisotropic>(&plate)) {
    // Only the field along the axis survives inside the plate: an
    // extraordinary wave polarized along the axis plus a surface current
    // mode with E_t = 0 and B_t along the axis.
    const double beta = perfect->axis_angle - angle_offset;
    const double ox = std::cos(beta);
    const double oy = std::sin(beta);
    const double psi = p.phi - beta;
    const double ks = p.k_perp * std::sin(psi);
    const double rt = std::sqrt(p.xi * p.xi + ks * ks);
    const Tangential wave(ox, oy, 1i * rt * oy, -1i * rt * ox);
    const Tangential surface(0, 0, ox, oy);
    return solve(p, cav, wave, surface);
  }

  UniaxialMedium m;
  if (const auto* iso = std::get_if<Isotropic>(&plate))
    m = UniaxialMedium{iso->eps, iso->eps, 0.0};
  else
    m = std::get<UniaxialMedium>(plate);
  const MediumWaves med = uniaxial_waves(p, m, angle_offset);
  return solve(p, cav, tangential(med.ordinary), tangential(med.extraordinary));
}

}  // namespace casimir
