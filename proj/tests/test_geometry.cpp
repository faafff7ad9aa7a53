#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "oracles.hpp"

using namespace casimir;

TEST(Efficiency, LargePlatesRecoverInfiniteResult) {
  EXPECT_GE(finite_plate_efficiency(1e3), 0.99);
  EXPECT_LT(finite_plate_efficiency(1e3), 1.0);
  EXPECT_NEAR(finite_plate_efficiency(1e6), 1.0, 1e-5);
}

TEST(Efficiency, SmallPlateAsymptote) {
  const double c = 0.01;
  EXPECT_NEAR(finite_plate_efficiency(c) / (4 / std::numbers::pi * c * c), 1.0, 0.05);
}

TEST(Efficiency, MatchesFourDimensionalIntegral) {
  for (double c : {0.1, 0.5, 1.0, 2.0})
    EXPECT_NEAR(finite_plate_efficiency(c) / oracle::efficiency_4d(c), 1.0, 1e-4) << c;
}

TEST(Efficiency, StrictlyIncreasingAndBounded) {
  double prev = 0.0;
  for (double lc = -3; lc <= 4; lc += 0.05) {
    const double eta = finite_plate_efficiency(std::pow(10.0, lc));
    EXPECT_GT(eta, prev);
    EXPECT_LT(eta, 1.0);
    prev = eta;
  }
}

TEST(Efficiency, TableTracksDirectEvaluation) {
  const EfficiencyTable& t = default_efficiency_table();
  for (double lc = -2.97; lc < 3.99; lc += 0.0731) {
    const double c = std::pow(10.0, lc);
    EXPECT_NEAR(t(c) / finite_plate_efficiency(c), 1.0, 1e-7) << c;
  }
  EXPECT_EQ(t(1e5), finite_plate_efficiency(1e5));
}

TEST(Efficiency, RejectsNonPositive) {
  EXPECT_THROW(finite_plate_efficiency(0.0), DomainError);
  EXPECT_THROW(finite_plate_energy(1.0, -1.0), DomainError);
}

TEST(FinitePlateEnergy, ApproachesInfinitePlates) {
  const double a = 1.0, b = 1e3;
  const EnergyResult e = finite_plate_energy(a, b, Units::natural);
  const double infinite = energy_ideal_closed(a, Units::natural).value * 4 * b * b;
  EXPECT_NEAR(e.value / infinite, 1.0, 5e-3);
}

TEST(FinitePlateEnergy, SmallPlatesScaleAsFourthPowerOfSide) {
  const double a = 1000.0;
  const double e1 = finite_plate_energy(a, 1.0, Units::natural, EfficiencyEvaluation::direct).value;
  const double e2 = finite_plate_energy(a, 2.0, Units::natural, EfficiencyEvaluation::direct).value;
  EXPECT_NEAR(e2 / e1, 16.0, 16 * 1e-5);
}

TEST(FinitePlateEnergy, LogLogSlopeSteepens) {
  const double b = 5e-6;  // 2b = 10 um
  auto slope = [&](double a) {
    const double h = 1e-3;
    const double lo = std::abs(finite_plate_energy(a * std::exp(-h), b).value);
    const double hi = std::abs(finite_plate_energy(a * std::exp(h), b).value);
    return (std::log(hi) - std::log(lo)) / (2 * h);
  };
  EXPECT_NEAR(slope(1e-7), -3.0, 0.15);
  EXPECT_LE(slope(1e-4), -4.5);
}
