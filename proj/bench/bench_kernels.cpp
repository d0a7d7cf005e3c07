// Serial reference vs OpenMP kernels. Thread count comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "eddr/kernels.hpp"
#include "eddr/rng.hpp"
#include "eddr/simulation.hpp"

using namespace eddr;

namespace {

Matrix data(int rows, int cols) {
  auto rng = substream(1, 0);
  return standard_normal(rows, cols, rng);
}

void BM_crossprod_serial(benchmark::State& st) {
  const Matrix X = data(int(st.range(0)), int(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(crossprod_serial(X));
}

void BM_crossprod_parallel(benchmark::State& st) {
  const Matrix X = data(int(st.range(0)), int(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(crossprod_parallel(X));
}

SimConfig trial_config(int p) {
  SimConfig c;
  c.p = p;
  c.N1 = c.N2 = 32;
  c.reps = 256;
  c.request.method = Method::M2Logit;
  c.request.eu = 0.2;
  c.request.beta = 0.1;
  return c;
}

void BM_trials_serial(benchmark::State& st) {
  const auto cfg = trial_config(int(st.range(0)));
  const auto d = make_design(cfg);
  for (auto _ : st) benchmark::DoNotOptimize(run_trials_serial(cfg, d));
}

void BM_trials_parallel(benchmark::State& st) {
  auto cfg = trial_config(int(st.range(0)));
  cfg.workers = omp_get_max_threads();
  const auto d = make_design(cfg);
  for (auto _ : st) benchmark::DoNotOptimize(run_trials(cfg, d));
}

}  // namespace

BENCHMARK(BM_crossprod_serial)->Args({64, 64})->Args({256, 1024})->Args({1024, 256});
BENCHMARK(BM_crossprod_parallel)->Args({64, 64})->Args({256, 1024})->Args({1024, 256});
BENCHMARK(BM_trials_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trials_parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
