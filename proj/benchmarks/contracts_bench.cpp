// Microbenchmarks for the hot paths of the freeness sweep.

#include <benchmark/benchmark.h>

#include "elicit/arbitrage.hpp"
#include "elicit/random.hpp"

using namespace elicit;

namespace {

ReportProfile profile_for(benchmark::State& state, std::uint64_t seed) {
  Rng rng(seed);
  return random_profile(rng, static_cast<std::size_t>(state.range(0)),
                        static_cast<std::size_t>(state.range(1)), 1000);
}

}  // namespace

// literal definition: per-expert leave-one-out means
static void BM_EvaluateLiteral(benchmark::State& state) {
  const auto p = profile_for(state, 1);
  const ContractSpec spec = LeaveOneOutContract{-1};
  for (auto _ : state) {
    for (std::size_t j = 0; j < p.outcome_count(); ++j) benchmark::DoNotOptimize(evaluate(spec, p, j));
  }
}
BENCHMARK(BM_EvaluateLiteral)->Args({3, 2})->Args({5, 4});

// norm form shared by the search and sweeps
static void BM_MemberRewards(benchmark::State& state) {
  const auto p = profile_for(state, 1);
  const ContractSpec spec = LeaveOneOutContract{-1};
  const Coalition everyone = Coalition::everyone(p.expert_count());
  for (auto _ : state) benchmark::DoNotOptimize(member_rewards(spec, p, everyone.members()));
}
BENCHMARK(BM_MemberRewards)->Args({3, 2})->Args({5, 4});

static void BM_DominanceCheck(benchmark::State& state) {
  const auto p = profile_for(state, 2);
  const ContractSpec spec = LeaveOneOutContract{-1};
  const DeviationChecker checker(spec, p);
  Rng rng(3);
  const Coalition c = random_coalition(rng, p.expert_count(), 2);
  const auto q = random_deviation(rng, p, c, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(checker.check(q, c, ArbitrageKind::dominance));
}
BENCHMARK(BM_DominanceCheck)->Args({3, 2})->Args({5, 4});

static void BM_RandomDeviation(benchmark::State& state) {
  const auto p = profile_for(state, 4);
  Rng rng(5);
  const Coalition c = Coalition::everyone(p.expert_count());
  for (auto _ : state) benchmark::DoNotOptimize(random_deviation(rng, p, c, 1000));
}
BENCHMARK(BM_RandomDeviation)->Args({3, 2})->Args({5, 4});

static void BM_GridSearchIntro(benchmark::State& state) {
  const ReportProfile p({Distribution({make_rational(2, 5), make_rational(3, 5)}),
                         Distribution({make_rational(1, 2), make_rational(1, 2)}),
                         Distribution({make_rational(9, 10), make_rational(1, 10)})});
  const ContractSpec spec = IndependentContract{RuleKind::quadratic};
  SearchOptions serial;
  serial.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        search_arbitrage(spec, p, Coalition::everyone(3), GridSearch{static_cast<std::size_t>(state.range(0))}, serial));
  }
}
BENCHMARK(BM_GridSearchIntro)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
