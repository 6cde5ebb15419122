#include <cmath>

#include <benchmark/benchmark.h>

#include "stokesfilm/config.hpp"
#include "stokesfilm/evolution.hpp"
#include "stokesfilm/singular_ops.hpp"
#include "stokesfilm/stokes_field.hpp"

using namespace stokesfilm;

namespace {

SimState ellipse(std::size_t n) {
  RunConfig cfg;
  cfg.ic = EllipseIC{2.0, 1.0};
  cfg.h0 = FourierH0{1.0, {{2, 0.3, 0.0}}};
  cfg.N = n;
  return build_initial_state(cfg);
}

ScalarField smooth(std::size_t n) {
  ScalarField f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = std::exp(std::sin(2 * M_PI * grid_point(j, n)));
  return f;
}

void BM_Hilbert(benchmark::State& st) {
  const ScalarField f = smooth(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hilbert(f));
}

void BM_HalfLaplacian(benchmark::State& st) {
  const ScalarField f = smooth(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(half_laplacian(f));
}

void BM_LogLayer(benchmark::State& st) {
  const SimState s = ellipse(st.range(0));
  const ScalarField g = smooth(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(log_layer(g, s.curve));
}

void BM_VelocityOnCurve(benchmark::State& st) {
  const SimState s = ellipse(st.range(0));
  const FlowParams p;
  for (auto _ : st) benchmark::DoNotOptimize(velocity_on_curve(s.curve, p));
}

void BM_Rhs(benchmark::State& st) {
  const SimState s = ellipse(st.range(0));
  const FlowParams p;
  for (auto _ : st) benchmark::DoNotOptimize(rhs(s, p));
}

void BM_Rk4Step(benchmark::State& st) {
  const SimState s = ellipse(st.range(0));
  StepConfig cfg;
  cfg.dt = 1e-3;
  const FlowParams p;
  for (auto _ : st) benchmark::DoNotOptimize(step(s, cfg, p));
}

}  // namespace

BENCHMARK(BM_Hilbert)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_HalfLaplacian)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK(BM_LogLayer)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_VelocityOnCurve)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_Rhs)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_Rk4Step)->RangeMultiplier(2)->Range(64, 256);
BENCHMARK_MAIN();
