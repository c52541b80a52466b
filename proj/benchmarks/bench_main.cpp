#include <benchmark/benchmark.h>

#include "ascount/asym.hpp"
#include "ascount/count.hpp"
#include "ascount/series.hpp"

namespace {

using namespace ascount;

void BM_GlobalDirichlet(benchmark::State& state) {
  PrimeContext ctx(2, 1, 2);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(global_dirichlet(ctx, m, 1));
}
BENCHMARK(BM_GlobalDirichlet)->Arg(60)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);

void BM_LocalOracle(benchmark::State& state) {
  PrimeContext ctx(2, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_local(ctx, 12, 1));
}
BENCHMARK(BM_LocalOracle)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PsiClosedForm(benchmark::State& state) {
  PrimeContext ctx(2, 1, static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (int f = 0; f <= ctx.r(); ++f) benchmark::DoNotOptimize(psi_closed_form(f, 9, ctx));
}
BENCHMARK(BM_PsiClosedForm)->DenseRange(1, 3);

void BM_PsiSign(benchmark::State& state) {
  PrimeContext ctx(3, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(psi_sign_at_rightmost(2, 8, ctx));
}
BENCHMARK(BM_PsiSign);

void BM_MainTermFit(benchmark::State& state) {
  PrimeContext ctx(2, 1, 2);
  IntSeries c = global_dirichlet(ctx, 240, 1);
  for (auto _ : state) benchmark::DoNotOptimize(main_term_fit(ctx, c));
}
BENCHMARK(BM_MainTermFit)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
