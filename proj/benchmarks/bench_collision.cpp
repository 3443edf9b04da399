#include <benchmark/benchmark.h>

#include <vector>

#include "qkinetic/dynamics.hpp"
#include "qkinetic/quantum_statistics.hpp"
#include "qkinetic/spectral_collision.hpp"

using namespace qkinetic;

namespace {

std::vector<double> bump(const VelocityGrid& grid) {
  const ThermoState th = thermo_from_density_temperature(1.0, 1.0, 9.0, Statistics::Fermi);
  auto f = quantum_maxwellian(th, {0.5, -0.25}, grid);
  const auto g = quantum_maxwellian(th, {-1.0, 0.5}, grid);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = 0.5 * (f[k] + g[k]);
  return f;
}

void BM_CollisionEvaluate(benchmark::State& state) {
  const VelocityGrid grid(static_cast<int>(state.range(0)), 8.0);
  const CollisionOperator op(build_kernel_tables(grid, static_cast<int>(state.range(1))));
  const CollisionConfig config{Statistics::Fermi, 9.0, 1.0};
  const auto f = bump(grid);
  std::vector<double> q(f.size());
  for (auto _ : state) {
    op.evaluate(f, config, q);
    benchmark::DoNotOptimize(q.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CollisionEvaluate)
    ->ArgsProduct({{16, 32, 64}, {4}})
    ->Args({32, 8})
    ->Unit(benchmark::kMillisecond);

void BM_KernelTables(benchmark::State& state) {
  const VelocityGrid grid(static_cast<int>(state.range(0)), 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel_tables(grid, 4));
}
BENCHMARK(BM_KernelTables)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_SolveFugacity(benchmark::State& state) {
  const auto s = state.range(0) == 0 ? Statistics::Bose : Statistics::Fermi;
  const auto e = macro_from_zT(thermo_from_density_temperature(1.0, 1.0, 9.0, s));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fugacity(e.density, e.internal_energy, 9.0, s));
  }
}
BENCHMARK(BM_SolveFugacity)->Arg(0)->Arg(1);

void BM_ApShockStep(benchmark::State& state) {
  const VelocityGrid grid(32, 8.0);
  const CollisionOperator op(build_kernel_tables(grid, 4));
  const int nx = static_cast<int>(state.range(0));
  SpatialField field(grid, nx, 0.0, 1.0);
  const ThermoState th = thermo_from_density_temperature(1.0, 1.0, 9.0, Statistics::Fermi);
  const auto m = quantum_maxwellian(th, {0.0, 0.0}, grid);
  for (int i = 0; i < nx; ++i) std::copy(m.begin(), m.end(), field.cell(i).begin());
  SchemeConfig config;
  config.epsilon = 1e-4;
  config.collision = {Statistics::Fermi, 9.0, 1.0};
  config.dt = cfl_dt(grid, field.dx(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(step_ap_first_order(field, config, op));
}
BENCHMARK(BM_ApShockStep)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
