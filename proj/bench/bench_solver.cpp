#include <benchmark/benchmark.h>

#include "qairy/airy_solver.hpp"
#include "qairy/classify.hpp"

using namespace qairy;

namespace {

AiryStructure structure(int rho, int n, int s, int D_F) {
  const auto spec = TwistSpec::with_root_shifts(rho, n, s);
  return structure_from_spec(spec, classify(spec).bounds, D_F);
}

// args: rho, n, s, D_F, parallel
void BM_solve(benchmark::State& state) {
  const int D = static_cast<int>(state.range(3));
  const auto A = structure(state.range(0), state.range(1), state.range(2), D);
  const SolveOptions opt{state.range(4) != 0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(solve(A, D, opt));
}

void BM_residual(benchmark::State& state) {
  const int D = static_cast<int>(state.range(3));
  const auto A = structure(state.range(0), state.range(1), state.range(2), D);
  const auto F = solve(A, D);
  const bool parallel = state.range(4) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(residual_check(A, F, D, parallel));
}

void cases(benchmark::internal::Benchmark* b) {
  b->ArgNames({"rho", "n", "s", "D", "par"});
  for (auto [rho, n, s] : {std::tuple{2, 2, 1}, {1, 3, 1}, {1, 2, 2}})
    for (int par : {0, 1}) b->Args({rho, n, s, 6, par});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_solve)->Apply(cases);
BENCHMARK(BM_residual)->Apply(cases);

BENCHMARK_MAIN();
