#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "oracles.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

const double kIdeal = -pi * pi / 720;

CavityConfig perfect(double chi) {
  CavityConfig cfg;
  cfg.plate1 = PerfectlyAnisotropic{};
  cfg.plate2 = PerfectlyAnisotropic{};
  cfg.chi = chi;
  return cfg;
}

CavityConfig uniaxial(double chi) {
  CavityConfig cfg;
  cfg.plate1 = UniaxialMedium{2.0, 6.0, 0.0};
  cfg.plate2 = UniaxialMedium{2.0, 6.0, 0.0};
  cfg.chi = chi;
  return cfg;
}

}  // namespace

TEST(EnergyIdealClosed, Values) {
  EXPECT_DOUBLE_EQ(energy_ideal_closed(1.0, Units::natural).value, kIdeal);
  EXPECT_NEAR(energy_ideal_closed(1.0, Units::natural).value, -1.37078e-2, 1e-7);
  const EnergyResult si = energy_ideal_closed(1e-6);
  EXPECT_NEAR(si.value / (-pi * pi * 3.16152677e-26 / (720 * 1e-18)), 1.0, 1e-15);
  EXPECT_EQ(si.unit_label, "J/m^2");
  EXPECT_EQ(si.error_estimate, 0.0);
  EXPECT_NEAR(energy_ideal_closed(2.0, Units::natural).value, kIdeal / 8, 1e-18);
  EXPECT_THROW(energy_ideal_closed(0.0), DomainError);
}

TEST(EnergyPerArea, IdealPlates) {
  const EnergyResult r = energy_per_area(CavityConfig{}, {}, Units::natural);
  EXPECT_NEAR(r.value / kIdeal - 1, 0.0, 1e-6);
  EXPECT_GE(r.error_estimate, 0.0);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(EnergyPerArea, LifshitzOracle) {
  CavityConfig cfg;
  cfg.plate1 = Isotropic{2.0};
  cfg.plate2 = Isotropic{2.0};
  QuadratureSpec q;
  q.rel_tol = 1e-10;
  const double expected = oracle::lifshitz_energy(2.0, 2.0);
  EXPECT_NEAR(energy_per_area(cfg, q, Units::natural).value / expected - 1, 0.0, 1e-8);
}

TEST(EnergyPerArea, LifshitzOracleDielectricCavity) {
  CavityConfig cfg;
  cfg.plate1 = Isotropic{5.0};
  cfg.plate2 = Isotropic{3.0};
  cfg.eps_cavity = 1.7;
  QuadratureSpec q;
  q.rel_tol = 1e-10;
  const double expected = oracle::lifshitz_energy(5.0, 3.0, 1.7);
  EXPECT_NEAR(energy_per_area(cfg, q, Units::natural).value / expected - 1, 0.0, 1e-8);
}

TEST(EnergyPerArea, ConductorProxyLimitChain) {
  CavityConfig cfg;
  cfg.plate1 = Isotropic{1e8};
  cfg.plate2 = Isotropic{1e8};
  const double proxy = energy_per_area(cfg, {}, Units::natural).value;
  const double ideal = energy_per_area(CavityConfig{}, {}, Units::natural).value;
  EXPECT_NEAR(ideal / kIdeal - 1, 0.0, 1e-6);
  // The TE channel approaches the conductor slowly: the deficit behaves as
  // ln(eps)/sqrt(eps) and is 1.9e-3 at eps = 1e8.
  const double deficit = proxy / ideal - 1;
  EXPECT_NEAR(deficit * 1e4 / std::log(1e8), -1.03, 0.05);
}

TEST(EnergyPerArea, IsotropicUniaxialEqualsIsotropic) {
  CavityConfig a, b;
  a.plate1 = a.plate2 = Isotropic{3.0};
  b.plate1 = b.plate2 = UniaxialMedium{3.0, 3.0, 0.7};
  b.chi = 0.4;
  EXPECT_EQ(energy_per_area(a, {}, Units::natural).value,
            energy_per_area(b, {}, Units::natural).value);
}

TEST(EnergyPerArea, PerfectlyAnisotropicAlignmentOrdering) {
  const double parallel = energy_per_area(perfect(0.0), {}, Units::natural).value;
  const double crossed = energy_per_area(perfect(pi / 2), {}, Units::natural).value;
  EXPECT_GT(std::abs(parallel), std::abs(crossed));
}

TEST(EnergyPerArea, ChiSymmetries) {
  QuadratureSpec q;
  q.rel_tol = 1e-9;
  for (double chi : {0.3, 1.1}) {
    const double e = energy_per_area(uniaxial(chi), q, Units::natural).value;
    const double neg = energy_per_area(uniaxial(-chi), q, Units::natural).value;
    const double mirror = energy_per_area(uniaxial(pi - chi), q, Units::natural).value;
    EXPECT_NEAR(neg / e - 1, 0.0, 1e-8);
    EXPECT_NEAR(mirror / e - 1, 0.0, 1e-8);
  }
}

TEST(EnergyPerArea, InverseCubeScaling) {
  for (const CavityConfig& base : {CavityConfig{}, perfect(0.5)}) {
    CavityConfig far = base;
    far.gap = 3.0;
    const double e1 = energy_per_area(base, {}, Units::natural).value;
    const double e3 = energy_per_area(far, {}, Units::natural).value;
    EXPECT_NEAR(e3 * 27 / e1 - 1, 0.0, 1e-6);
  }
}

TEST(EnergyPerArea, BoundarySolveRouteAgrees) {
  QuadratureSpec closed, solve;
  solve.route = ReflectionRoute::boundary_solve;
  const double a = energy_per_area(uniaxial(0.6), closed, Units::natural).value;
  const double b = energy_per_area(uniaxial(0.6), solve, Units::natural).value;
  EXPECT_NEAR(a / b - 1, 0.0, 2e-6);
}

TEST(EnergyPerArea, ErrorEstimatesShrinkWithRefinement) {
  QuadratureSpec q;
  q.rel_tol = 1e-9;
  const EnergyResult r = energy_per_area(perfect(0.4), q, Units::natural);
  ASSERT_GE(r.level_errors.size(), 3u);
  for (std::size_t i = 1; i < r.level_errors.size(); ++i)
    EXPECT_LT(r.level_errors[i], r.level_errors[i - 1]);
}

TEST(EnergyPerArea, BitReproducibleAcrossThreadCounts) {
  QuadratureSpec one, many;
  one.threads = 1;
  many.threads = 7;
  const EnergyResult a = energy_per_area(perfect(0.7), one, Units::natural);
  const EnergyResult b = energy_per_area(perfect(0.7), many, Units::natural);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error_estimate, b.error_estimate);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(EnergyPerArea, ConvergenceFailureCarriesPartialResult) {
  QuadratureSpec q;
  q.rel_tol = 1e-14;
  q.max_refinement_levels = 1;
  try {
    energy_per_area(perfect(0.3), q, Units::natural);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_LT(e.partial_value(), 0.0);
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(EnergyPerArea, RejectsInvalidInput) {
  CavityConfig cfg;
  cfg.gap = -1;
  EXPECT_THROW(energy_per_area(cfg), DomainError);
  cfg.gap = 1;
  cfg.geometry = FiniteSquare{2.0};
  EXPECT_THROW(energy_per_area(cfg), DomainError);
  QuadratureSpec q;
  q.phi_nodes = 7;
  EXPECT_THROW(energy_per_area(CavityConfig{}, q), DomainError);
}

TEST(EnergyPerArea, SiUnits) {
  CavityConfig cfg;
  cfg.gap = 1e-6;
  const EnergyResult r = energy_per_area(cfg);
  EXPECT_NEAR(r.value / energy_ideal_closed(1e-6).value - 1, 0.0, 1e-6);
  EXPECT_EQ(r.unit_label, "J/m^2");
}

TEST(Pressure, IdealClosedForm) {
  const EnergyResult p = pressure(CavityConfig{}, {}, Units::natural);
  EXPECT_NEAR(p.value / (-pi * pi / 240) - 1, 0.0, 1e-6);
}

TEST(Pressure, MatchesFiniteDifferenceOfEnergy) {
  QuadratureSpec q;
  q.rel_tol = 1e-8;
  for (const CavityConfig& base : {uniaxial(0.3), perfect(1.0)}) {
    const double a = base.gap, h = 1e-3;
    auto energy = [&](double gap) {
      CavityConfig c = base;
      c.gap = gap;
      return energy_per_area(c, q, Units::natural).value;
    };
    const double d1 = (energy(a + h) - energy(a - h)) / (2 * h);
    const double d2 = (energy(a + h / 2) - energy(a - h / 2)) / h;
    const double fd = -(4 * d2 - d1) / 3;
    const double p = pressure(base, q, Units::natural).value;
    EXPECT_NEAR(p / fd - 1, 0.0, 1e-4);
  }
}

TEST(Pressure, VanishesAtLargeGap) {
  CavityConfig cfg;
  cfg.gap = 1e4;
  EXPECT_LT(std::abs(pressure(cfg, {}, Units::natural).value), 1e-17);
}

TEST(Torque, RotationInvariantPlatesRejected) {
  CavityConfig cfg;
  cfg.plate1 = Isotropic{2.0};
  cfg.plate2 = UniaxialMedium{3.0, 3.0, 0.0};
  EXPECT_THROW(torque_per_area(cfg), DomainError);
}

TEST(Torque, VanishesAtSymmetricAlignments) {
  QuadratureSpec q;
  q.rel_tol = 1e-5;
  for (double chi : {0.0, pi / 2}) {
    const EnergyResult m = torque_per_area(perfect(chi), q, Units::natural);
    EXPECT_LE(std::abs(m.value), m.error_estimate + 1e-14);
  }
}

TEST(Torque, MatchesEnergyDifferences) {
  QuadratureSpec q;
  q.rel_tol = 1e-9;
  const double chi = 0.5, h = 1e-2;
  const double ep = energy_per_area(uniaxial(chi + h), q, Units::natural).value;
  const double em = energy_per_area(uniaxial(chi - h), q, Units::natural).value;
  const double m = torque_per_area(uniaxial(chi), q, Units::natural).value;
  EXPECT_NEAR(m / ((ep - em) / (2 * h)) - 1, 0.0, 1e-3);
}

TEST(NormalizedSweep, RatiosAreGapIndependent) {
  CavityConfig near = perfect(0.0), far = perfect(0.0);
  far.gap = 7.5;
  const auto a = normalized_energy_sweep(near, {0.0, pi / 3});
  const auto b = normalized_energy_sweep(far, {0.0, pi / 3});
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].ratio, b[i].ratio, 1e-6);
  EXPECT_NEAR(a[0].ratio, 0.5235, 0.05 * 0.5235);
}
