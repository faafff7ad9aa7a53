#include <benchmark/benchmark.h>

#include <numbers>

#include "casimir/energy.hpp"
#include "casimir/geometry.hpp"

namespace {

using namespace casimir;

QuadratureSpec single_thread(double rel_tol) {
  QuadratureSpec q;
  q.rel_tol = rel_tol;
  q.threads = 1;
  return q;
}

void BM_IdealEnergy(benchmark::State& state) {
  const QuadratureSpec q = single_thread(1e-8);
  for (auto _ : state)
    benchmark::DoNotOptimize(energy_per_area(CavityConfig{}, q, Units::natural));
}
BENCHMARK(BM_IdealEnergy)->Unit(benchmark::kMillisecond);

void BM_UniaxialEnergy(benchmark::State& state) {
  CavityConfig cfg;
  cfg.plate1 = cfg.plate2 = UniaxialMedium{2.0, 9.0, 0.0};
  cfg.chi = 0.5;
  const QuadratureSpec q = single_thread(1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(energy_per_area(cfg, q, Units::natural));
}
BENCHMARK(BM_UniaxialEnergy)->Unit(benchmark::kMillisecond);

void BM_PerfectlyAnisotropicEnergy(benchmark::State& state) {
  CavityConfig cfg;
  cfg.plate1 = cfg.plate2 = PerfectlyAnisotropic{};
  cfg.chi = std::numbers::pi / 4;
  const QuadratureSpec q = single_thread(1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(energy_per_area(cfg, q, Units::natural));
}
BENCHMARK(BM_PerfectlyAnisotropicEnergy)->Unit(benchmark::kMillisecond);

void BM_Torque(benchmark::State& state) {
  CavityConfig cfg;
  cfg.plate1 = cfg.plate2 = PerfectlyAnisotropic{};
  cfg.chi = std::numbers::pi / 4;
  const QuadratureSpec q = single_thread(1e-5);
  for (auto _ : state) benchmark::DoNotOptimize(torque_per_area(cfg, q, Units::natural));
}
BENCHMARK(BM_Torque)->Unit(benchmark::kMillisecond);

void BM_EfficiencyDirect(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(finite_plate_efficiency(3.7));
}
BENCHMARK(BM_EfficiencyDirect);

void BM_EfficiencyTable(benchmark::State& state) {
  const EfficiencyTable& t = default_efficiency_table();
  for (auto _ : state) benchmark::DoNotOptimize(t(3.7));
}
BENCHMARK(BM_EfficiencyTable);

}  // namespace
