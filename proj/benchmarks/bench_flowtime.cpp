#include <benchmark/benchmark.h>

#include <cstdint>

#include "flowtime/equilibrium.hpp"
#include "flowtime/fluid.hpp"
#include "flowtime/instance_gen.hpp"
#include "flowtime/network.hpp"
#include "flowtime/oracle.hpp"
#include "flowtime/quickest.hpp"
#include "flowtime/stackelberg.hpp"

namespace {

using namespace flowtime;

// Four edges, three phases, the standard hand-checked instance.
Network branch_net() {
  Network n;
  n.nodes = {"s", "v", "t"};
  n.edges = {{"e1", "s", "v", Rat(2), Rat(0)},
             {"e2", "v", "t", Rat(1), Rat(0)},
             {"e3", "v", "t", Rat(1), Rat(1)},
             {"e4", "s", "t", Rat(1), Rat(1)}};
  n.source = "s";
  n.sink = "t";
  n.inflow_rate = Rat(3);
  n.demand = Rat(11, 2);
  return validate(n);
}

Network generated(std::uint64_t seed, int nodes, int extra) {
  GenConfig g;
  g.seed = seed;
  g.nodes = nodes;
  g.extra_edges = extra;
  return generate_instance(g);
}

void BM_QuickestFlow(benchmark::State& state) {
  Network net = generated(42, static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(quickest_flow(net));
}
BENCHMARK(BM_QuickestFlow)->Args({6, 4})->Args({8, 8})->Args({10, 12});

void BM_EquilibriumBranch(benchmark::State& state) {
  Network net = branch_net();
  for (auto _ : state) benchmark::DoNotOptimize(simulate_equilibrium(net));
}
BENCHMARK(BM_EquilibriumBranch);

void BM_Equilibrium(benchmark::State& state) {
  Network net = generated(42, static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_equilibrium(net));
}
BENCHMARK(BM_Equilibrium)->Args({6, 4})->Args({8, 8})->Args({10, 12});

void BM_Pipeline(benchmark::State& state) {
  Network net = generated(42, static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(stackelberg_pipeline(net));
}
BENCHMARK(BM_Pipeline)->Args({6, 4})->Args({8, 8});

void BM_ReplayTrace(benchmark::State& state) {
  Network net = branch_net();
  EquilibriumTrace tr = simulate_equilibrium(net);
  double dt = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(replay_trace(net, tr, dt));
}
BENCHMARK(BM_ReplayTrace)->Arg(1000)->Arg(10000);

void BM_BestResponseRouter(benchmark::State& state) {
  Network net = branch_net();
  double dt = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_best_response(net, dt));
}
BENCHMARK(BM_BestResponseRouter)->Arg(1000)->Arg(4000);

void BM_BruteHorizon(benchmark::State& state) {
  Network net = generated(42, 5, 3);  // 7 edges
  for (auto _ : state) benchmark::DoNotOptimize(brute_horizon(net));
}
BENCHMARK(BM_BruteHorizon);

}  // namespace

BENCHMARK_MAIN();
