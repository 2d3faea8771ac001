#include <benchmark/benchmark.h>

#include "yeelab/fresnel.hpp"
#include "yeelab/simulation.hpp"
#include "yeelab/sweep.hpp"

using namespace yeelab;

static void BM_ClosedFormPoint(benchmark::State& state) {
  const InterfaceCase ic = InterfaceCase::dielectric(1, 4, 16);
  double n = 40;
  for (auto _ : state) {
    const WaveDiscretization wd(n, 1);
    benchmark::DoNotOptimize(error_report(ic, wd));
    n = n > 1000 ? 40 : n + 0.5;
  }
}
BENCHMARK(BM_ClosedFormPoint);

static void BM_Step(benchmark::State& state) {
  SimConfig cfg = SimConfig::gated(InterfaceCase::dielectric(1, 4, 1), WaveDiscretization(20, 1));
  cfg.m_total = static_cast<std::size_t>(state.range(0));
  FieldState st = build(cfg);
  const TfsfFeed feed{0.0, 0.0};
  for (auto _ : state) {
    step(st, cfg, feed);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(1 << 10)->Arg(1 << 14);

static void BM_RunAndMeasure(benchmark::State& state) {
  const SimConfig cfg =
      SimConfig::gated(InterfaceCase::magnetic(4, 3, 2), WaveDiscretization(static_cast<double>(state.range(0)), 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_and_measure(cfg));
  }
}
BENCHMARK(BM_RunAndMeasure)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
  SweepSpec spec{.ic_template = InterfaceCase::dielectric(1, 100, 2)};
  for (double n = 50; n <= 150; n += 1) {
    spec.axis_values.push_back(n);
  }
  spec.courant_mode = CourantMode::Both;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(spec, 1));
  }
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
