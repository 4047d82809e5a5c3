#include <benchmark/benchmark.h>

#include <random>

#include "dialg/algebra.hpp"
#include "dialg/dialgebra.hpp"
#include "dialg/operators.hpp"
#include "dialg/solver.hpp"

using namespace dialg;

namespace {

FiniteAlgebra algebra_for(int64_t id) {
  switch (id) {
    case 0: return field_algebra();
    case 1: return truncated_poly(3);
    case 2: return group_algebra_c2();
    default: return matrix_algebra(2);
  }
}

void BM_KpWindow(benchmark::State& state) {
  const auto a = algebra_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kp_window(2, 2, a));
}
BENCHMARK(BM_KpWindow)->DenseRange(0, 3);

void BM_ValidateDialgebra(benchmark::State& state) {
  const auto d = kp_window(2, 2, algebra_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_dialgebra(d));
}
BENCHMARK(BM_ValidateDialgebra)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_IsDerivation(benchmark::State& state) {
  const auto d = kp_window(2, 2, algebra_for(state.range(0)));
  std::mt19937_64 rng(1);
  Vec x;
  for (std::size_t i = 0; i < d.dim(); ++i) x.push_back(Rational(static_cast<int64_t>(rng() % 7) - 3));
  const auto op = inner_ad(d, x);
  for (auto _ : state) benchmark::DoNotOptimize(is_derivation(d, op));
}
BENCHMARK(BM_IsDerivation)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_DerivationSpace(benchmark::State& state) {
  const auto d = kp_window(static_cast<std::size_t>(state.range(1)), static_cast<std::size_t>(state.range(1)),
                           algebra_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(derivation_space(d));
}
BENCHMARK(BM_DerivationSpace)->ArgsProduct({{0, 1, 3}, {1, 2}})->Unit(benchmark::kMillisecond);

void BM_DiderivationSpace(benchmark::State& state) {
  const auto d = kp_window(2, 2, algebra_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diderivation_space(d));
}
BENCHMARK(BM_DiderivationSpace)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
