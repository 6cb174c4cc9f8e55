#include <benchmark/benchmark.h>

#include <random>

#include "opcalc/solver.hpp"

namespace {

using namespace opcalc;

FormalSeries<Complex> random_series(int length, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> coeffs;
  for (int i = 0; i < length; ++i) coeffs.emplace_back(u(rng), u(rng));
  coeffs[0] = 1.0;
  return FormalSeries<Complex>(0, std::move(coeffs), length - 1);
}

void BM_SeriesMul(benchmark::State& state) {
  const auto a = random_series(static_cast<int>(state.range(0)), 1);
  const auto b = random_series(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_SeriesMul)->Arg(16)->Arg(64)->Arg(256);

void BM_SeriesInvert(benchmark::State& state) {
  const auto a = random_series(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(invert(a));
}
BENCHMARK(BM_SeriesInvert)->Arg(16)->Arg(64)->Arg(256);

void BM_ExactSeriesMul(benchmark::State& state) {
  const auto a = convert_series<ExactComplex>(random_series(static_cast<int>(state.range(0)), 4));
  const auto b = convert_series<ExactComplex>(random_series(static_cast<int>(state.range(0)), 5));
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_ExactSeriesMul)->Arg(16)->Arg(64);

void BM_FindRoots(benchmark::State& state) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<Complex> coeffs;
  for (int i = 0; i <= state.range(0); ++i) coeffs.emplace_back(u(rng), u(rng));
  const Polynomial<Complex> p(coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p));
}
BENCHMARK(BM_FindRoots)->Arg(2)->Arg(6)->Arg(12);

void BM_SolveFloating(benchmark::State& state) {
  EquationSpec<Complex> s;
  s.operator_coeffs = {2.0, -3.0, 1.0};
  s.initial_conditions = {1.0, 6.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve(s));
}
BENCHMARK(BM_SolveFloating);

void BM_SolveExactPlum(benchmark::State& state) {
  EquationSpec<ExactComplex> s;
  s.nu = 2.0;
  s.operator_coeffs = {ExactComplex(-9), ExactComplex(-8), ExactComplex(1)};
  s.initial_conditions = {ExactComplex(1), ExactComplex(16)};
  for (auto _ : state) benchmark::DoNotOptimize(solve(s));
}
BENCHMARK(BM_SolveExactPlum);

void BM_EvalSeries(benchmark::State& state) {
  const auto a = geometric(Complex(-1.0, 0.0), 64);
  for (auto _ : state) benchmark::DoNotOptimize(eval_series(a, 0.0, 1.5));
}
BENCHMARK(BM_EvalSeries);

}  // namespace

BENCHMARK_MAIN();
