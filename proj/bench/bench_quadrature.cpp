// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "magic/eval.hpp"

using namespace magic;

namespace {

struct Setup {
  BoxDiagram d;
  CycleAssignment a;
  EvalPoint p;
  explicit Setup(int loops) : d(loops == 1 ? one_loop() : from_word({Z2})) {
    a = assign_radii(d);
    p = sample_point(a, 11);
  }
};

void BM_quadrature_parallel(benchmark::State &st) {
  Setup s(static_cast<int>(st.range(0)));
  const GridSpec g{static_cast<int>(st.range(1)), static_cast<int>(st.range(2))};
  for (auto _ : st) benchmark::DoNotOptimize(quadrature_sum(s.d, s.a, s.p, g));
}

void BM_quadrature_serial(benchmark::State &st) {
  Setup s(static_cast<int>(st.range(0)));
  const GridSpec g{static_cast<int>(st.range(1)), static_cast<int>(st.range(2))};
  for (auto _ : st) benchmark::DoNotOptimize(quadrature_sum_serial(s.d, s.a, s.p, g));
}

void BM_cycle_rule_parallel(benchmark::State &st) {
  const CycleRule rule = make_cycle_rule(1.0, {static_cast<int>(st.range(0)), static_cast<int>(st.range(1))});
  const CycleFunction f = [](const HMatrix &Z) { return 1.0 / (norm(Z) * norm(Z)); };
  for (auto _ : st) benchmark::DoNotOptimize(integrate_rule(rule, f));
}

void BM_cycle_rule_serial(benchmark::State &st) {
  const CycleRule rule = make_cycle_rule(1.0, {static_cast<int>(st.range(0)), static_cast<int>(st.range(1))});
  const CycleFunction f = [](const HMatrix &Z) { return 1.0 / (norm(Z) * norm(Z)); };
  for (auto _ : st) benchmark::DoNotOptimize(integrate_rule_serial(rule, f));
}

BasisVector dense(int twoLmax) {
  BasisVector v;
  for (int tl = 0; tl <= twoLmax; ++tl)
    for (int n = -tl; n <= tl; n += 2)
      for (int m = -tl; m <= tl; m += 2) v.add({-1 - tl, tl, n, m}, cplx(1.0 / (1 + tl), 0.1 * n));
  return v;
}

void BM_multiply_parallel(benchmark::State &st) {
  const BasisVector a = dense(static_cast<int>(st.range(0))), b = dense(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(multiply(a, b));
}

void BM_multiply_serial(benchmark::State &st) {
  const BasisVector a = dense(static_cast<int>(st.range(0))), b = dense(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(multiply_serial(a, b));
}

} // namespace

BENCHMARK(BM_quadrature_parallel)->Args({1, 32, 16})->Args({2, 10, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_quadrature_serial)->Args({1, 32, 16})->Args({2, 10, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cycle_rule_parallel)->Args({32, 16})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cycle_rule_serial)->Args({32, 16})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_parallel)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_serial)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
