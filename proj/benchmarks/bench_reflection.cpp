#include <benchmark/benchmark.h>

#include "casimir/reflection.hpp"
#include "casimir/spectrum.hpp"

namespace {

using namespace casimir;

const SpectralPoint kPoint{0.7, 1.3, 0.4};
const UniaxialMedium kMedium{2.0, 9.0, 0.2};

void BM_Fresnel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reflect_isotropic(kPoint, 3.0, 1.0));
}
BENCHMARK(BM_Fresnel);

void BM_UniaxialClosedForm(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(reflect_uniaxial_closed(kPoint, kMedium, 1.0, 0.3));
}
BENCHMARK(BM_UniaxialClosedForm);

void BM_UniaxialBoundarySolve(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(boundary_solve_reflection(kPoint, kMedium, 1.0, 0.3));
}
BENCHMARK(BM_UniaxialBoundarySolve);

void BM_PerfectlyAnisotropic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reflect_perfectly_anisotropic(kPoint, 0.3));
}
BENCHMARK(BM_PerfectlyAnisotropic);

void BM_LogIntegrand(benchmark::State& state) {
  const ReflectionMatrix r1 = reflect_uniaxial_closed(kPoint, kMedium, 1.0, 0.0);
  const ReflectionMatrix r2 = reflect_uniaxial_closed(kPoint, kMedium, 1.0, 0.3);
  const RoundTrip rt = round_trip(r1, r2, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(log_integrand(rt, 1.0));
}
BENCHMARK(BM_LogIntegrand);

}  // namespace
