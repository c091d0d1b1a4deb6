#include <benchmark/benchmark.h>

#include "flatpde/auxiliary.hpp"
#include "flatpde/corpus.hpp"

using namespace flatpde;

namespace {

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

const PointTransformation& sample(int n) {
  static const JetContext c2(2), c3(3), c4(4);
  static const std::vector<PointTransformation> t2 = transformation_corpus(c2, 3, 1),
                                                t3 = transformation_corpus(c3, 3, 1),
                                                t4 = transformation_corpus(c4, 3, 1);
  return n == 2 ? t2.back() : n == 3 ? t3.back() : t4.back();
}

void BM_squares(benchmark::State& state) {
  const auto& t = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(squares(t, mode(state)));
}

void BM_integrability(benchmark::State& state) {
  const auto& t = sample(static_cast<int>(state.range(0)));
  const PdeSystem sys = synthesize(t);
  for (auto _ : state) benchmark::DoNotOptimize(integrability_residuals(sys, mode(state)));
}

void BM_flatness(benchmark::State& state) {
  const CubicForm c = ghlm_from_squares(sample(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(flatness_residuals(c, mode(state)));
}

void BM_chern(benchmark::State& state) {
  const PdeSystem sys = synthesize(sample(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(chern_tensor_identity(sys, mode(state)));
}

void BM_cross_diff(benchmark::State& state) {
  const auto& t = sample(static_cast<int>(state.range(0)));
  const PiTable p = pi_from_squares(squares(t));
  for (auto _ : state) benchmark::DoNotOptimize(cross_diff_residuals(t.ctx, p, mode(state)));
}

void BM_compat(benchmark::State& state) {
  const CubicForm c = ghlm_from_squares(sample(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(compat_residuals(c, mode(state)));
}

// Second argument: 0 serial reference, 1 OpenMP.
#define KERNEL(fn) BENCHMARK(fn)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond)
KERNEL(BM_squares);
KERNEL(BM_integrability);
KERNEL(BM_flatness);
KERNEL(BM_chern);
KERNEL(BM_cross_diff);
BENCHMARK(BM_compat)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
