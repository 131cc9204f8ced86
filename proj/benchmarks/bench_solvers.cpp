#include <benchmark/benchmark.h>

#include "fairmanna/paperlab.hpp"
#include "fairmanna/solvers.hpp"

using namespace fairmanna;
namespace pl = fairmanna::paperlab;

namespace {

Instance bench_instance(int n, int m, std::uint64_t seed) {
  pl::GenConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.klass = pl::UtilityClass::mixed;
  cfg.seed = seed;
  return pl::gen_random_instance(cfg);
}

}  // namespace

static void BM_Enumerate(benchmark::State& state) {
  const Instance inst = bench_instance(2, static_cast<int>(state.range(0)), 11);
  const std::uint64_t total = require_within_cap(inst, kDefaultEnumCap);
  for (auto _ : state) {
    Rational acc;
    for (AllocationCursor cur(inst, 0, total); !cur.done(); cur.advance())
      acc += cur.utilities()[0];
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * total);
}
BENCHMARK(BM_Enumerate)->Arg(8)->Arg(12)->Arg(16);

static void BM_LeximinSolve(benchmark::State& state) {
  const Instance inst = bench_instance(2, static_cast<int>(state.range(0)), 23);
  EnumOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_leximin(inst, opts).allocation);
}
BENCHMARK(BM_LeximinSolve)->Arg(8)->Arg(10)->Arg(12);

static void BM_LeximinSolveParallel(benchmark::State& state) {
  const Instance inst = bench_instance(2, 16, 23);
  EnumOptions opts;
  opts.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_leximin(inst, opts).allocation);
}
BENCHMARK(BM_LeximinSolveParallel)->Arg(1)->Arg(2)->Arg(4);

static void BM_CheckJfx(benchmark::State& state) {
  const Instance inst = bench_instance(3, static_cast<int>(state.range(0)), 31);
  const Allocation alloc = Allocation::from_index(inst.n(), inst.m(), 1234567 % 6561);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_jf(inst, alloc, PropertyVariant::JFX_0).holds);
}
BENCHMARK(BM_CheckJfx)->Arg(8);

static void BM_GreedyPass(benchmark::State& state) {
  pl::GenConfig cfg;
  cfg.n = 4;
  cfg.m = static_cast<int>(state.range(0));
  cfg.klass = pl::UtilityClass::goods_and_bads;
  cfg.seed = 47;
  const Instance inst = pl::gen_random_instance(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(jf1zero_greedy(inst).allocation);
}
BENCHMARK(BM_GreedyPass)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
