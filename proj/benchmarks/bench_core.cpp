// Microbenchmarks for the hot paths: the group exponential, one integrator
// step of each flavour, and a full short simulation including invariant
// recording.
#include <benchmark/benchmark.h>

#include "epmech/oracle.hpp"
#include "epmech/reduction.hpp"

using namespace epmech;

namespace {

void BM_ExpSO3(benchmark::State& state) {
  const Vec3 w(0.4, -0.2, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exp_so3(w));
  }
}
BENCHMARK(BM_ExpSO3);

void BM_FreeRigidBodyRhs(benchmark::State& state) {
  const SystemSpec sys = make_free_rigid_body(InertiaOperator::diagonal(1.0, 2.0, 3.0));
  const EPState s = make_state(sys, 0.0, Rotation::identity(), algebra3(Vec3(1.0, 0.1, 0.1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ep_rhs(sys, s));
  }
}
BENCHMARK(BM_FreeRigidBodyRhs);

void BM_HeavyTopRhs(benchmark::State& state) {
  const SystemSpec sys =
      make_heavy_top(InertiaOperator::diagonal(1.0, 2.0, 3.0), 1.0, 9.81, Vec3(0, 0, 0.3));
  const EPState s =
      make_state(sys, 0.0, exp_so3(Vec3(0.3, 0, 0)), algebra3(Vec3(0.5, 0.3, 0.8)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ep_rhs(sys, s));
  }
}
BENCHMARK(BM_HeavyTopRhs);

void BM_HeavyTopSimulate1k(benchmark::State& state) {
  const SystemSpec sys =
      make_heavy_top(InertiaOperator::diagonal(1.0, 2.0, 3.0), 1.0, 9.81, Vec3(0, 0, 0.3));
  const EPState init =
      make_state(sys, 0.0, exp_so3(Vec3(0.3, 0, 0)), algebra3(Vec3(0.5, 0.3, 0.8)));
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(sys, init, cfg));
  }
}
BENCHMARK(BM_HeavyTopSimulate1k);

void BM_PendulumOracle1k(benchmark::State& state) {
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_every = 10;
  const CartesianState init{Vec3(1, 0, 0), Vec3(0, 1.5, 0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_pendulum_cartesian(init, Vec3(0, 0, -9.81), 1.0, cfg));
  }
}
BENCHMARK(BM_PendulumOracle1k);

}  // namespace

BENCHMARK_MAIN();
