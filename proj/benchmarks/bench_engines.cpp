#include <benchmark/benchmark.h>

#include "lcs/cycle.hpp"
#include "lcs/format.hpp"
#include "lcs/generate.hpp"
#include "lcs/liveness.hpp"
#include "lcs/reach_subsets.hpp"
#include "lcs/semantics.hpp"
#include "lcs/witness.hpp"

namespace {

using namespace lcs;

System instance(std::uint32_t leader, std::uint32_t contributor,
                std::uint32_t domain, std::uint64_t seed) {
  GenParams p;
  p.leader_states = leader;
  p.contributor_states = contributor;
  p.domain_size = domain;
  p.density = 0.4;
  p.seed = seed;
  return generate_instance(p);
}

void BM_SaturateAbstract(benchmark::State& state) {
  System s = instance(3, static_cast<std::uint32_t>(state.range(0)), 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(saturate_abstract(s));
}
BENCHMARK(BM_SaturateAbstract)->Arg(3)->Arg(6)->Arg(10);

void BM_WitnessTable(benchmark::State& state) {
  System s = instance(static_cast<std::uint32_t>(state.range(0)), 3, 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(valid_short_table(s));
}
BENCHMARK(BM_WitnessTable)->Arg(2)->Arg(3);

void BM_CycFixpoint(benchmark::State& state) {
  System s = instance(3, 3, static_cast<std::uint32_t>(state.range(0)), 11);
  Interface iface{(StateMask{1} << s.contributor.state_count) - 1,
                  s.leader.initial, s.initial_value};
  for (auto _ : state) benchmark::DoNotOptimize(cyc(s, iface));
}
BENCHMARK(BM_CycFixpoint)->Arg(2)->Arg(4);

void BM_Liveness(benchmark::State& state) {
  System s = instance(3, 3, 2, 13);
  ReachBackend backend =
      state.range(0) == 0 ? ReachBackend::kSubsets : ReachBackend::kWitness;
  for (auto _ : state) benchmark::DoNotOptimize(lcl(s, backend));
}
BENCHMARK(BM_Liveness)->Arg(0)->Arg(1);

void BM_BoundedLiveOracle(benchmark::State& state) {
  System s = instance(3, 3, 2, 17);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        bounded_live_oracle(s, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_BoundedLiveOracle)->Arg(2)->Arg(3);

void BM_ParseSerialize(benchmark::State& state) {
  std::string text = serialize_system(instance(4, 4, 3, 19));
  for (auto _ : state) {
    System s = parse_system(text);
    benchmark::DoNotOptimize(serialize_system(s));
  }
}
BENCHMARK(BM_ParseSerialize);

}  // namespace

BENCHMARK_MAIN();
