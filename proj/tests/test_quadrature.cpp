#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "casimir/quadrature.hpp"

using namespace casimir;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u, 512u}) {
    const GaussLegendreRule& r = gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), n);
    const int degree = static_cast<int>(std::min<std::size_t>(2 * n - 1, 30));
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += r.weights[i] * std::pow(r.nodes[i], degree);
    EXPECT_NEAR(sum, 1.0 / (degree + 1), 1e-14) << n;
  }
}

TEST(GaussLegendre, NodesAscendInsideUnitInterval) {
  const GaussLegendreRule& r = gauss_legendre(33);
  EXPECT_GT(r.nodes.front(), 0.0);
  EXPECT_LT(r.nodes.back(), 1.0);
  for (std::size_t i = 1; i < r.nodes.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  EXPECT_NEAR(r.nodes[16], 0.5, 1e-16);
}

TEST(GaussLegendre, CachedRuleIsStable) {
  EXPECT_EQ(&gauss_legendre(40), &gauss_legendre(40));
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(CompensatedSum, RecoversLostDigits) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-25);

  double naive = 1.0;
  for (int i = 0; i < 1000; ++i) naive += 1e-16;
  EXPECT_GT(std::abs(naive - 1.0 - 1e-13), 1e-14);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
}
