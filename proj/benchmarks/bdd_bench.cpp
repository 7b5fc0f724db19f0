#include <benchmark/benchmark.h>

#include <random>

#include "shiftadd/experiment.hpp"
#include "shiftadd/fooling.hpp"
#include "shiftadd/rng.hpp"
#include "shiftadd/sadd.hpp"

using namespace shiftadd;

static void BM_BuildSaddNaturalOrder(benchmark::State& state) {
  const sadd_params params(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    bdd_manager manager{var_order::natural(params)};
    const bitvec_fn out = build_sadd(manager, params);
    benchmark::DoNotOptimize(manager.dag_size(out.bits));
  }
}
BENCHMARK(BM_BuildSaddNaturalOrder)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

static void BM_BuildSaddRandomOrder(benchmark::State& state) {
  const sadd_params params(static_cast<unsigned>(state.range(0)));
  std::mt19937_64 eng(1);
  for (auto _ : state) {
    bdd_manager manager{var_order::random(params, eng)};
    const bitvec_fn out = build_sadd(manager, params);
    benchmark::DoNotOptimize(manager.dag_size(out.bits));
  }
}
BENCHMARK(BM_BuildSaddRandomOrder)->Arg(8)->Arg(12)->Arg(16);

static void BM_ApplyXorChain(benchmark::State& state) {
  const sadd_params params(16);
  for (auto _ : state) {
    bdd_manager manager{var_order::natural(params)};
    bdd acc = manager.false_bdd();
    for (const var_id v : params.all_vars())
      acc = manager.apply(bool_op::xor_op, acc, manager.var(v));
    benchmark::DoNotOptimize(acc.id());
  }
}
BENCHMARK(BM_ApplyXorChain);

static void BM_ExhaustiveEvalN4(benchmark::State& state) {
  const sadd_params params(4);
  bdd_manager manager{var_order::natural(params)};
  const bitvec_fn out = build_sadd(manager, params);
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (std::uint64_t a = 0; a < 16; ++a)
      for (std::uint64_t b = 0; b < 16; ++b)
        for (std::uint64_t d = 0; d < 8; ++d)
          acc += eval_value(out, assignment::from_integers(params, a, b, d));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ExhaustiveEvalN4);

static void BM_FoolingSweep(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const sadd_params params(n);
  const bool_fn oracle = [params](const assignment& x) {
    return oracle_sadd_bit(params, x.a_value(), x.b_value(), x.d_value(),
                           params.n - 1);
  };
  const auto partitions = sample_partitions(params, 0.5, 20, 99);
  verify_options options;
  options.max_pairs = 256;
  for (auto _ : state) {
    std::size_t valid = 0;
    for (const auto& partition : partitions)
      valid += verify_fooling_set(oracle, build_fooling_set(partition), options).valid;
    benchmark::DoNotOptimize(valid);
  }
}
BENCHMARK(BM_FoolingSweep)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
