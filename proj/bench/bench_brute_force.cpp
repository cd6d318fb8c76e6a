// Serial vs OpenMP exhaustive search on one fixed mid-sized instance, with the
// branch-and-bound solve for scale.

#include <benchmark/benchmark.h>


#include "edgeprog/partitioner/random_instance.hpp"
#include "edgeprog/partitioner/solver.hpp"

using namespace edgeprog::partitioner;

namespace {

// First seeded instance whose search space lies in [2^18, 2^21].
const Instance& instance() {
  static const Instance inst = [] {
    RandomSpec spec;
    spec.max_movable = 16;
    spec.min_devices = 3;
    for (std::uint64_t s = 1;; ++s) {
      auto i = random_instance(s, spec);
      const auto n = search_space(i.graph);
      if (n >= (1u << 18) && n <= (1u << 21)) return i;
    }
  }();
  return inst;
}

void BM_BruteForce(benchmark::State& state, int threads, Objective mode) {
  const auto& inst = instance();
  for (auto _ : state) {
    auto p = brute_force(inst.graph, inst.profiles, mode, threads);
    benchmark::DoNotOptimize(p.value);
  }
  state.counters["assignments"] = static_cast<double>(search_space(inst.graph));
}

void BM_Solve(benchmark::State& state, Objective mode) {
  const auto& inst = instance();
  for (auto _ : state) {
    auto p = solve(inst.graph, inst.profiles, mode);
    benchmark::DoNotOptimize(p.value);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_BruteForce, latency_serial, 1, Objective::Latency)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BruteForce, latency_openmp, 0, Objective::Latency)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BruteForce, energy_serial, 1, Objective::Energy)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BruteForce, energy_openmp, 0, Objective::Energy)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, latency, Objective::Latency)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, energy, Objective::Energy)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
