#include <benchmark/benchmark.h>

#include "torus/collineation.hpp"
#include "torus/lattice.hpp"
#include "torus/reconstruction.hpp"
#include "torus_cli/commands.hpp"

namespace {

void BM_Search(benchmark::State& state) {
  const torus::Int m = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(torus::collineation_group(2, m).order);
}
BENCHMARK(BM_Search)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_InferAffine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const torus::Int m = state.range(1);
  auto f = torus::cli::generate_map(n, m, 1, torus::cli::MapKind::affine);
  for (auto _ : state) benchmark::DoNotOptimize(torus::infer_affine(f).index());
}
BENCHMARK(BM_InferAffine)->Args({2, 12})->Args({3, 12})->Args({2, 101})->Unit(benchmark::kMicrosecond);

void BM_VerifyLines(benchmark::State& state) {
  auto f = torus::cli::generate_map(3, state.range(0), 1, torus::cli::MapKind::perturbed);
  for (auto _ : state) benchmark::DoNotOptimize(torus::verify_line_preserving(f).has_value());
}
BENCHMARK(BM_VerifyLines)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_Hnf(benchmark::State& state) {
  const std::vector<torus::IntVec> rows{{6, 10, 15, 4}, {9, -3, 12, 7}, {2, 8, -5, 11}};
  for (auto _ : state) benchmark::DoNotOptimize(torus::hnf(4, rows).rank());
}
BENCHMARK(BM_Hnf);

}  // namespace
BENCHMARK_MAIN();
