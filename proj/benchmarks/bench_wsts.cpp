#include <benchmark/benchmark.h>

#include "wsts/devkit/checks.hpp"
#include "wsts/devkit/generators.hpp"
#include "wsts/ikm.hpp"
#include "wsts/liveness.hpp"
#include "wsts/product.hpp"

using namespace wsts;

namespace {

// (+1,-1) from (0,n): the clover has n+1 incomparable vectors.
void BM_IkmChain(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto net = NetModel::from_vas(2, {{"t", {1, -1}}});
  std::size_t nodes = 0;
  for (auto _ : state) {
    const auto tree = build_ikm_tree(NetCompletion(net), IdealVec::down(Marking{0, n}));
    nodes = tree.size();
    benchmark::DoNotOptimize(clover(tree));
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_IkmChain)->RangeMultiplier(4)->Range(4, 256);

// The seeded clover instances of the acceptance suite, one tree each.
void BM_IkmSeeded(benchmark::State& state) {
  const auto instances = devkit::clover_instances(2024, 50, 20);
  const auto worklist = state.range(0) ? Worklist::lifo : Worklist::fifo;
  for (auto _ : state) {
    for (const auto& i : instances) {
      benchmark::DoNotOptimize(
          build_ikm_tree(NetCompletion(i.net), IdealVec::down(i.x0), {kDefaultNodeBudget, worklist})
              .size());
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(instances.size()));
}
BENCHMARK(BM_IkmSeeded)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SubwordInclusion(benchmark::State& state) {
  devkit::Rng rng(2024);
  std::vector<std::pair<EpsNfa, EpsNfa>> pairs;
  devkit::NfaShape shape;
  shape.max_states = static_cast<std::size_t>(state.range(0));
  for (int k = 0; k < 50; ++k)
    pairs.emplace_back(subword_closure(devkit::random_nfa(rng, shape)),
                       subword_closure(devkit::random_nfa(rng, shape)));
  for (auto _ : state)
    for (const auto& [a, b] : pairs) benchmark::DoNotOptimize(inclusion_counterexample(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_SubwordInclusion)->Arg(4)->Arg(8)->Arg(16);

void BM_Positivity(benchmark::State& state) {
  devkit::Rng rng(2024);
  std::vector<EffectAutomaton> automata;
  for (int k = 0; k < 50; ++k) {
    automata.push_back(devkit::random_effect_automaton(
        rng, static_cast<std::size_t>(state.range(0)), 3, 2));
  }
  for (auto _ : state)
    for (const auto& ea : automata) benchmark::DoNotOptimize(exists_positive_sequence(ea));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(automata.size()));
}
BENCHMARK(BM_Positivity)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_RepeatedCoverability(benchmark::State& state) {
  const auto instances = devkit::bounded_instances(2024, 30);
  for (auto _ : state)
    for (const auto& i : instances)
      benchmark::DoNotOptimize(repeatedly_coverable(i.net, i.x0, *i.target).holds);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(instances.size()));
}
BENCHMARK(BM_RepeatedCoverability)->Unit(benchmark::kMillisecond);

void BM_LtlModelCheck(benchmark::State& state) {
  const auto net = NetModel::from_vas(3, {{"produce", {0, 1, 0}}, {"consume", {0, -1, 0}}});
  const auto phi = parse_ltl(state.range(0) ? "F G !consume" : "G F produce | G F consume");
  for (auto _ : state) benchmark::DoNotOptimize(model_check_ltl(net, Marking{1, 0, 1}, phi).holds);
}
BENCHMARK(BM_LtlModelCheck)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
