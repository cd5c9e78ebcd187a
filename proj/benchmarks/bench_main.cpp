#include <benchmark/benchmark.h>

#include "dhym/coupled.hpp"
#include "dhym/dhym.hpp"
#include "dhym/oracle.hpp"

namespace {

const dhym::SurfaceParams kSurface = dhym::make_surface(1, 0, 5);
const dhym::BundleClass kBundle{-1, 1};

void BM_EvalH(benchmark::State& state) {
  const dhym::DhymSolution sol = dhym::solve_dhym(kSurface, kBundle);
  double t = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhym::eval_H(sol, t));
    t = t < 7.0 ? t + 1e-3 : 5.0;
  }
}
BENCHMARK(BM_EvalH);

void BM_EvalPsi(benchmark::State& state) {
  const dhym::ProfilePoly p = dhym::conical_coefficients(kSurface, kBundle, 0.5);
  double t = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhym::eval_psi(p, t));
    t = t < 7.0 ? t + 1e-3 : 5.0;
  }
}
BENCHMARK(BM_EvalPsi);

void BM_SolvePipeline(benchmark::State& state) {
  for (auto _ : state) {
    const dhym::DhymSolution sol = dhym::solve_dhym(kSurface, kBundle);
    const dhym::ProfilePoly p = dhym::conical_coefficients(kSurface, kBundle, 0.5);
    benchmark::DoNotOptimize(sol.Cprime);
    benchmark::DoNotOptimize(p.d1);
  }
}
BENCHMARK(BM_SolvePipeline);

void BM_Positivity(benchmark::State& state) {
  const dhym::ProfilePoly p = dhym::conical_coefficients(kSurface, kBundle, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(dhym::positivity_certificate(p).min_value);
}
BENCHMARK(BM_Positivity);

void BM_Rk4Oracle(benchmark::State& state) {
  const dhym::DhymSolution sol = dhym::solve_dhym(kSurface, kBundle);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto g = dhym::oracle::rk4_solve(
        [&](double t, double H) { return dhym::dhym_rhs(sol.phase, t, H); }, 7.0, -2.0, 5.0, step);
    benchmark::DoNotOptimize(g.values.back());
  }
}
BENCHMARK(BM_Rk4Oracle)->Arg(1000)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
