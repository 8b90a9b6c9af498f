// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "vbslab/fcs_state.hpp"
#include "vbslab/kernels.hpp"

namespace {

const vbs::FcsTensor tensor = vbs::in_sz_basis(vbs::deformed_tensor(0.5));
const vbs::Operator boundary = vbs::singlet_matrix(2);
const vbs::Operator right = vbs::identity(2);

void outcomes_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vbs::kernels::accumulate_outcomes_serial(tensor.matrices, boundary, right, n));
}

void outcomes_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vbs::kernels::accumulate_outcomes(tensor.matrices, boundary, right, n));
}

void dense_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vbs::kernels::fill_dense_serial(tensor.matrices, boundary, right, n));
}

void dense_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vbs::kernels::fill_dense(tensor.matrices, boundary, right, n));
}

void projection_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const vbs::CVector v = vbs::kernels::fill_dense(tensor.matrices, boundary, right, n);
  const vbs::Operator basis = vbs::aklt_measurement_basis();
  for (auto _ : state) benchmark::DoNotOptimize(vbs::kernels::project_outcomes_serial(v, n, 3, 2, basis));
}

void projection_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const vbs::CVector v = vbs::kernels::fill_dense(tensor.matrices, boundary, right, n);
  const vbs::Operator basis = vbs::aklt_measurement_basis();
  for (auto _ : state) benchmark::DoNotOptimize(vbs::kernels::project_outcomes(v, n, 3, 2, basis));
}

}  // namespace

BENCHMARK(outcomes_serial)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(outcomes_parallel)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(dense_serial)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(dense_parallel)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(projection_serial)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);
BENCHMARK(projection_parallel)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
