#include <benchmark/benchmark.h>

#include <random>

#include "explab/cyclotomic.hpp"
#include "explab/dmodule.hpp"
#include "explab/exp_sums.hpp"
#include "explab/finite_model.hpp"
#include "explab/parser.hpp"

using namespace explab;

namespace {

Cyclo random_cyclo(std::mt19937_64& rng, int p) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c(p - 1);
  for (auto& q : c) {
    q = Rational(num(rng), den(rng));
    q.canonicalize();
  }
  return Cyclo::from_coeffs(p, c);
}

void BM_CycloMul(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const Cyclo a = random_cyclo(rng, p), b = random_cyclo(rng, p);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMul)->Arg(3)->Arg(7)->Arg(13)->Arg(31);

void BM_FourierTransform(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  std::size_t q = 1;
  for (int i = 0; i < r; ++i) q *= p;
  std::mt19937_64 rng(2);
  ExpObject h(FiniteSet(q), p);
  for (std::size_t x = 0; x < q; ++x) h.at(x, static_cast<long>(x % p)) = random_cyclo(rng, p);
  const ExpClass c(std::move(h));
  for (auto _ : state) benchmark::DoNotOptimize(ft(c, r));
}
BENCHMARK(BM_FourierTransform)->Args({5, 1})->Args({7, 1})->Args({5, 2})->Args({7, 2})->Unit(benchmark::kMillisecond);

void BM_Kloosterman(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_sum(p, 1));
}
BENCHMARK(BM_Kloosterman)->Arg(7)->Arg(13)->Arg(31);

void BM_Buchberger(benchmark::State& state) {
  const std::vector<WeylElt> gens =
      state.range(0) == 0
          ? parse_weyl_list("x1 - x2; d1 + d2", 2)
          : parse_weyl_list("x1^2*d1 - x2*d2 + 1; d1*d2 - x1; x2^2 - d1", 2);
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(gens));
}
BENCHMARK(BM_Buchberger)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_RealAt(benchmark::State& state) {
  const CyclicModule m = CyclicModule::from_generators({parse_weyl("x*(x - 1)*d - 1/3", 1)});
  for (auto _ : state) benchmark::DoNotOptimize(real_at(m, 1));
}
BENCHMARK(BM_RealAt)->Unit(benchmark::kMillisecond);

void BM_KernelRestriction(benchmark::State& state) {
  const std::vector<int> second{1};
  const CyclicModule wedge = fourier_module(exp_kernel_module(), second);
  for (auto _ : state) benchmark::DoNotOptimize(partial_restrict_last(wedge, 2));
}
BENCHMARK(BM_KernelRestriction)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
