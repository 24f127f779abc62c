#include <benchmark/benchmark.h>

#include "qtorus/corpus.hpp"
#include "qtorus/matrix_rep.hpp"
#include "qtorus/spaces.hpp"

using namespace qtorus;

namespace {

QElement sample(int degree, std::size_t index = 0) {
  CorpusSpec c;
  c.max_degree = degree;
  c.seed = 42;
  return random_element(c, index);
}

void BM_Multiply(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const QElement x = sample(degree, 0), y = sample(degree, 1);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
  state.counters["terms"] = static_cast<double>(x.support_size() * y.support_size());
}
BENCHMARK(BM_Multiply)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_MatrixSchatten(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const QElement x = sample(4);
  for (auto _ : state) {
    const TruncatedMatrix a = to_matrix(x, N);
    benchmark::DoNotOptimize(schatten_norm(a, 1.0));
  }
  state.counters["dim"] = static_cast<double>(window_size(2, N));
}
BENCHMARK(BM_MatrixSchatten)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LpNormAdaptive(benchmark::State& state) {
  const QElement x = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(x, 1.0).value);
}
BENCHMARK(BM_LpNormAdaptive)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BesovBlocks(benchmark::State& state) {
  const QElement x = sample(8);
  const double p = state.range(0) == 0 ? 2.0 : 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(x, 0.5, p, 2.0).value);
}
BENCHMARK(BM_BesovBlocks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BesovHeat(benchmark::State& state) {
  const QElement x = sample(8);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm_semigroup(x, 0.5, 2.0, 2.0, Semigroup::kHeat, 1).value);
}
BENCHMARK(BM_BesovHeat)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
