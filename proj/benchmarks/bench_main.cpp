#include <benchmark/benchmark.h>

#include "causeway/cause_defs.hpp"
#include "causeway/goofspiel.hpp"

namespace {

using namespace causeway;

std::vector<int> descending_deck(int n) {
  std::vector<int> deck(n);
  for (int i = 0; i < n; ++i) deck[i] = n - i;
  return deck;
}

void BM_SampleContext(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Engine engine = goofspiel::make_engine(n, descending_deck(n));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_context(engine.scm, seed++));
  }
}
BENCHMARK(BM_SampleContext)->Arg(5)->Arg(8);

void BM_Rollout(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Engine engine = goofspiel::make_engine(n, descending_deck(n));
  const Context ctx = sample_context(engine.scm, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rollout(engine.scm, ctx, {}));
  }
}
BENCHMARK(BM_Rollout)->Arg(5)->Arg(8);

void BM_CounterfactualRollout(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Engine engine = goofspiel::make_engine(n, descending_deck(n));
  const Context ctx = sample_context(engine.scm, 1);
  const Trajectory actual = rollout(engine.scm, ctx, {});
  InterventionSet iv;
  iv.set(VariableId::action(0, 1), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(roll(engine.scm, ctx, iv, &actual));
  }
}
BENCHMARK(BM_CounterfactualRollout)->Arg(5)->Arg(8);

void BM_EnumeratePairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Engine engine = goofspiel::make_engine(n, descending_deck(n));
  const Context ctx = sample_context(engine.scm, 1);
  const Event event = goofspiel::agents_do_not_win_event();
  for (auto _ : state) {
    auto sets = enumerate_pairs_multi(
        engine, ctx, event,
        {DefinitionTag::BF, DefinitionTag::HP, DefinitionTag::AC}, kDefaultMaxSize, 1);
    benchmark::DoNotOptimize(sets);
  }
}
BENCHMARK(BM_EnumeratePairs)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
