#include "casimir/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/spectrum.hpp"

namespace casimir {

std::string to_string(Units u) { return u == Units::si ? "si" : "natural"; }

std::string unit_label(Quantity q, Units u) {
  if (u == Units::si) {
    switch (q) {
      case Quantity::energy_per_area: return "J/m^2";
      case Quantity::pressure: return "J/m^3";
      case Quantity::torque_per_area: return "J/(m^2 rad)";
      case Quantity::energy: return "J";
    }
  }
  switch (q) {
    case Quantity::energy_per_area: return "hbar*c/L^3";
    case Quantity::pressure: return "hbar*c/L^4";
    case Quantity::torque_per_area: return "hbar*c/(L^3 rad)";
    case Quantity::energy: return "hbar*c/L";
  }
  return {};
}

void validate(const CavityConfig& cfg) {
  if (!(cfg.gap > 0.0) || !std::isfinite(cfg.gap))
    throw DomainError("gap must be positive and finite");
  if (!(cfg.eps_cavity > 0.0) || !std::isfinite(cfg.eps_cavity))
    throw DomainError("cavity permittivity must be positive and finite");
  if (!std::isfinite(cfg.chi)) throw DomainError("chi must be finite");
  validate(cfg.plate1);
  validate(cfg.plate2);
  if (const auto* sq = std::get_if<FiniteSquare>(&cfg.geometry))
    if (!(sq->half_side > 0.0) || !std::isfinite(sq->half_side))
      throw DomainError("half_side must be positive and finite");
}

void validate(const QuadratureSpec& q) {
  if (!(q.rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(q.abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (q.max_refinement_levels < 1)
    throw DomainError("max_refinement_levels must be >= 1");
  if (q.phi_nodes < 8 || q.phi_nodes % 2 != 0)
    throw DomainError("phi_nodes must be even and >= 8");
  if (q.theta_nodes < 2) throw DomainError("theta_nodes must be >= 2");
  if (q.radial_nodes < 2) throw DomainError("radial_nodes must be >= 2");
  if (!(q.radial_map_scale > 0.0) || !std::isfinite(q.radial_map_scale))
    throw DomainError("radial_map_scale must be positive and finite");
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPrefactor = 1.0 / (8.0 * kPi * kPi * kPi);

enum class Kind { energy, pressure, torque };

// primary: the integrated quantity; aux: torque differencing error;
// scale: energy density, the reference for relative tolerances.
struct Triple {
  double primary = 0.0;
  double aux = 0.0;
  double scale = 0.0;
};

struct SliceResult {
  Triple value;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct Totals {
  Triple value;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::vector<double> level_errors;
};

class SpectralIntegral {
 public:
  SpectralIntegral(const CavityConfig& cfg, const QuadratureSpec& q, Kind kind)
      : cfg_(cfg), q_(q), kind_(kind) {
    validate(cfg);
    validate(q);
    if (!std::holds_alternative<InfinitePlates>(cfg.geometry))
      throw DomainError("spectral integral requires infinite plates");
    if (kind == Kind::torque) {
      constexpr double h = kTorqueStep;
      offsets_ = {cfg.chi, cfg.chi - h, cfg.chi + h, cfg.chi - 0.5 * h,
                  cfg.chi + 0.5 * h};
    } else {
      offsets_ = {cfg.chi};
    }
  }

  Totals run() const {
    if (is_rotation_invariant(cfg_.plate1) && is_rotation_invariant(cfg_.plate2)) {
      const SliceResult s = slice(0.0);
      Totals t;
      t.value = scaled(s.value, 2.0 * kPi);
      t.error = 2.0 * kPi * s.error;
      t.evaluations = s.evaluations;
      t.level_errors.push_back(t.error);
      return t;
    }

    // The integrand is pi-periodic in phi: slice j sits at phi = 2 pi j / n
    // for j < n/2 and carries weight 4 pi / n.
    std::size_t n = static_cast<std::size_t>(q_.phi_nodes);
    std::vector<SliceResult> slices(n / 2);
    evaluate_slices(slices, n, 0, 1);
    Totals prev = combine(slices, n);
    Totals cur = prev;

    for (int level = 1; level <= q_.max_refinement_levels; ++level) {
      const std::size_t n2 = 2 * n;
      std::vector<SliceResult> fine(n2 / 2);
      for (std::size_t j = 0; j < slices.size(); ++j) fine[2 * j] = slices[j];
      evaluate_slices(fine, n2, 1, 2);
      slices = std::move(fine);
      n = n2;

      cur = combine(slices, n);
      cur.error += std::abs(cur.value.primary - prev.value.primary);
      cur.level_errors = prev.level_errors;
      cur.level_errors.push_back(cur.error);
      if (cur.error <= tolerance(cur.value, q_.rel_tol)) return cur;
      prev = cur;
    }
    throw ConvergenceError(non_convergence("azimuthal"), cur.value.primary,
                           cur.error);
  }

 private:
  static Triple scaled(const Triple& t, double w) {
    return {w * t.primary, w * t.aux, w * t.scale};
  }

  double tolerance(const Triple& t, double rel) const {
    return rel * std::max(std::abs(t.primary), std::abs(t.scale)) + q_.abs_tol;
  }

  std::string non_convergence(const char* axis) const {
    std::ostringstream os;
    os << axis << " quadrature did not converge within "
       << q_.max_refinement_levels << " refinement levels (plates "
       << describe(cfg_.plate1) << " / " << describe(cfg_.plate2)
       << ", chi=" << cfg_.chi << ")";
    return os.str();
  }

  void evaluate_slices(std::vector<SliceResult>& slices, std::size_t n,
                       std::size_t first, std::size_t stride) const {
    const std::size_t count = (slices.size() - first + stride - 1) / stride;
    parallel_for(count, q_.threads, [&](std::size_t i) {
      const std::size_t j = first + i * stride;
      const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
      slices[j] = slice(phi);
    });
  }

  Totals combine(const std::vector<SliceResult>& slices, std::size_t n) const {
    CompensatedSum p, a, s, e;
    Totals t;
    for (const SliceResult& r : slices) {
      p.add(r.value.primary);
      a.add(r.value.aux);
      s.add(r.value.scale);
      e.add(r.error);
      t.evaluations += r.evaluations;
    }
    const double w = 4.0 * kPi / static_cast<double>(n);
    t.value = {w * p.value(), w * a.value(), w * s.value()};
    t.error = w * e.value();
    return t;
  }

  // Gauss-Legendre in theta on [0, pi/2], doubled until two orders agree.
  SliceResult slice(double phi) const {
    std::size_t n = static_cast<std::size_t>(q_.theta_nodes);
    SliceResult prev = theta_rule(phi, n);
    std::size_t evals = prev.evaluations;
    for (int level = 1; level <= q_.max_refinement_levels; ++level) {
      n *= 2;
      SliceResult cur = theta_rule(phi, n);
      evals += cur.evaluations;
      cur.error = std::abs(cur.value.primary - prev.value.primary);
      cur.evaluations = evals;
      if (cur.error <= tolerance(cur.value, 0.1 * q_.rel_tol)) return cur;
      prev = cur;
    }
    throw ConvergenceError(non_convergence("polar"), prev.value.primary,
                           prev.error);
  }

  SliceResult theta_rule(double phi, std::size_t n) const {
    const GaussLegendreRule& rule = gauss_legendre(n);
    CompensatedSum p, a, s;
    SliceResult out;
    for (std::size_t i = 0; i < n; ++i) {
      const double theta = 0.5 * kPi * rule.nodes[i];
      const double w = 0.5 * kPi * rule.weights[i] * std::sin(theta);
      const Triple v = direction(theta, phi, out.evaluations);
      p.add(w * v.primary);
      a.add(w * v.aux);
      s.add(w * v.scale);
    }
    out.value = {p.value(), a.value(), s.value()};
    return out;
  }

  // Radial integral at one direction, gap = 1.
  Triple direction(double theta, double phi, std::size_t& evals) const {
    const SpectralPoint dir{std::cos(theta), std::sin(theta), phi};
    const double q3 = cavity_momentum(dir, cfg_.eps_cavity);
    const ReflectionMatrix r1 = reflect(dir, cfg_.plate1, cfg_.eps_cavity, 0.0, q_.route);

    std::array<RoundTrip, 5> trips{};
    const std::size_t m = offsets_.size();
    for (std::size_t j = 0; j < m; ++j) {
      const ReflectionMatrix r2 =
          reflect(dir, cfg_.plate2, cfg_.eps_cavity, offsets_[j], q_.route);
      trips[j] = round_trip(r1, r2, 0.0);
    }

    std::size_t n = static_cast<std::size_t>(q_.radial_nodes);
    std::array<double, 5> prev = radial_rule(trips, m, q3, dir, n);
    evals += n * m;
    double diff = 0.0;
    for (int level = 1; level <= q_.max_refinement_levels + 2; ++level) {
      n *= 2;
      const std::array<double, 5> cur = radial_rule(trips, m, q3, dir, n);
      evals += n * m;
      double mag = 0.0;
      diff = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        diff = std::max(diff, std::abs(cur[j] - prev[j]));
        mag = std::max(mag, std::abs(cur[j]));
      }
      if (diff <= 1e-3 * q_.rel_tol * mag + 1e-300) return assemble(cur);
      prev = cur;
    }
    throw ConvergenceError(non_convergence("radial"), prev[0], diff);
  }

  std::array<double, 5> radial_rule(const std::array<RoundTrip, 5>& trips,
                                    std::size_t m, double q3,
                                    const SpectralPoint& dir, std::size_t n) const {
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double s = q_.radial_map_scale;
    std::array<CompensatedSum, 5> sums;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = rule.nodes[i];
      const double p = s * t / (1.0 - t);
      const double jac = s / ((1.0 - t) * (1.0 - t));
      const double w = rule.weights[i] * jac * p * p;
      const SpectralPoint where{p * dir.xi, p * dir.k_perp, dir.phi};
      for (std::size_t j = 0; j < m; ++j) {
        RoundTrip rt = trips[j];
        rt.rho3 = q3 * p;
        const double f = kind_ == Kind::pressure
                             ? log_integrand_gap_derivative(rt, 1.0, where)
                             : log_integrand(rt, 1.0, where);
        sums[j].add(w * f);
      }
    }
    std::array<double, 5> out{};
    for (std::size_t j = 0; j < m; ++j) out[j] = sums[j].value();
    return out;
  }

  Triple assemble(const std::array<double, 5>& v) const {
    if (kind_ != Kind::torque) return {v[0], 0.0, v[0]};
    constexpr double h = kTorqueStep;
    const double d_h = (v[2] - v[1]) / (2.0 * h);
    const double d_half = (v[4] - v[3]) / h;
    return {(4.0 * d_half - d_h) / 3.0, (d_half - d_h) / 3.0, v[0]};
  }

  CavityConfig cfg_;
  QuadratureSpec q_;
  Kind kind_;
  std::vector<double> offsets_;
};

EnergyResult finish(const Totals& t, double factor, Quantity quantity, Units units,
                    bool include_aux) {
  EnergyResult r;
  r.value = factor * t.value.primary;
  r.error_estimate = std::abs(factor) * (t.error + (include_aux ? std::abs(t.value.aux) : 0.0));
  r.evaluations = t.evaluations;
  r.units = units;
  r.unit_label = unit_label(quantity, units);
  for (double e : t.level_errors) r.level_errors.push_back(std::abs(factor) * e);
  return r;
}

}  // namespace

EnergyResult energy_ideal_closed(double gap, Units units) {
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw DomainError("gap must be positive and finite");
  EnergyResult r;
  r.value = -kPi * kPi * hbar_c(units) / (720.0 * gap * gap * gap);
  r.units = units;
  r.unit_label = unit_label(Quantity::energy_per_area, units);
  return r;
}

EnergyResult energy_per_area(const CavityConfig& cfg, const QuadratureSpec& q,
                             Units units) {
  const Totals t = SpectralIntegral(cfg, q, Kind::energy).run();
  const double a = cfg.gap;
  return finish(t, kPrefactor * hbar_c(units) / (a * a * a),
                Quantity::energy_per_area, units, false);
}

EnergyResult pressure(const CavityConfig& cfg, const QuadratureSpec& q, Units units) {
  const Totals t = SpectralIntegral(cfg, q, Kind::pressure).run();
  const double a = cfg.gap;
  return finish(t, -kPrefactor * hbar_c(units) / (a * a * a * a), Quantity::pressure,
                units, false);
}

EnergyResult torque_per_area(const CavityConfig& cfg, const QuadratureSpec& q,
                             Units units) {
  validate(cfg);
  if (is_rotation_invariant(cfg.plate1) && is_rotation_invariant(cfg.plate2))
    throw DomainError("torque identically zero by symmetry");
  const Totals t = SpectralIntegral(cfg, q, Kind::torque).run();
  const double a = cfg.gap;
  return finish(t, kPrefactor * hbar_c(units) / (a * a * a),
                Quantity::torque_per_area, units, true);
}

std::vector<NormalizedPoint> normalized_energy_sweep(const CavityConfig& cfg,
                                                     const std::vector<double>& chis,
                                                     const QuadratureSpec& q) {
  const double e0 = energy_ideal_closed(cfg.gap, Units::natural).value;
  std::vector<NormalizedPoint> out;
  out.reserve(chis.size());
  for (double chi : chis) {
    CavityConfig c = cfg;
    c.chi = chi;
    const EnergyResult e = energy_per_area(c, q, Units::natural);
    out.push_back({chi, e.value / e0, std::abs(e.error_estimate / e0), e.evaluations});
  }
  return out;
}

}  // namespace casimir
