// Microbenchmarks for the hot paths of the kernel: truncated Taylor
// arithmetic, codec round trips, and the self-avoiding walk counter.

#include <benchmark/benchmark.h>

#include "ank/codecs.hpp"
#include "ank/expr.hpp"
#include "ank/fekete.hpp"
#include "ank/taylor.hpp"

using namespace ank;

static void BM_TpMul(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  TaylorPoly p = maclaurin(BaseFn(BaseFn::Exp), n);
  TaylorPoly q = maclaurin(BaseFn(BaseFn::Sin), n);
  for (auto _ : state) benchmark::DoNotOptimize(tp_mul(p, q));
}
BENCHMARK(BM_TpMul)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_TpReciprocalNaive(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  TaylorPoly p = maclaurin(BaseFn(BaseFn::Cos), n);
  for (auto _ : state) benchmark::DoNotOptimize(tp_reciprocal(p, false));
}
BENCHMARK(BM_TpReciprocalNaive)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_TpReciprocalNewton(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  TaylorPoly p = maclaurin(BaseFn(BaseFn::Cos), n);
  for (auto _ : state) benchmark::DoNotOptimize(tp_reciprocal(p, true));
}
BENCHMARK(BM_TpReciprocalNewton)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_TpCompose(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  TaylorPoly p = maclaurin(BaseFn(BaseFn::Exp), n);
  TaylorPoly q = maclaurin(BaseFn(BaseFn::Sin), n);
  for (auto _ : state) benchmark::DoNotOptimize(tp_compose(p, q));
}
BENCHMARK(BM_TpCompose)->Arg(8)->Arg(16)->Arg(32);

static void BM_PeriodicDecimalRoundTrip(benchmark::State& state) {
  Rational x(Integer(123456789), Integer(104729));
  for (auto _ : state) {
    PeriodicDecimal pd = to_periodic_decimal(x);
    benchmark::DoNotOptimize(from_periodic_decimal(pd));
  }
}
BENCHMARK(BM_PeriodicDecimalRoundTrip);

static void BM_CfracEncode(benchmark::State& state) {
  Rational x = babylonian_sqrt2(8);
  for (auto _ : state) benchmark::DoNotOptimize(cfrac_encode(x));
}
BENCHMARK(BM_CfracEncode);

static void BM_EvalGuarded(benchmark::State& state) {
  Expr e = parse_expr("exp(sin(x)) + arctan(x*x) / (1 + cos(x))");
  Rational p(1, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_guarded(e, p, state.range(0)));
}
BENCHMARK(BM_EvalGuarded)->Arg(64)->Arg(128)->Arg(256);

static void BM_SawCount(benchmark::State& state) {
  unsigned long n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(saw_count(n));
}
BENCHMARK(BM_SawCount)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
