#include <benchmark/benchmark.h>

#include "advicebench/covering.hpp"
#include "advicebench/harness.hpp"
#include "advicebench/scheduling.hpp"
#include "advicebench/weighted_core.hpp"

namespace ab = advicebench;

static void BM_FamilyBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto f = ab::build_family_greedy(n, ab::Rational(2), ab::Direction::kMin);
    benchmark::DoNotOptimize(f.members.size());
  }
}
BENCHMARK(BM_FamilyBuild)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

static void BM_BruteForceOpt(benchmark::State& state) {
  ab::GeneratorSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.weight_decades = 6;
  const ab::Instance inst = ab::generate_instance(spec);
  for (auto _ : state) benchmark::DoNotOptimize(ab::brute_force_opt(inst).score);
}
BENCHMARK(BM_BruteForceOpt)->DenseRange(10, 18, 4)->Unit(benchmark::kMicrosecond);

static void BM_BruteForceSchedule(benchmark::State& state) {
  ab::GeneratorSpec spec;
  spec.kind = ab::GeneratorKind::kRandomUnrelated;
  spec.n = static_cast<int>(state.range(0));
  spec.m = 2;
  spec.weight_decades = 6;
  const auto jobs = ab::generate_jobs(spec).jobs;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ab::brute_force_schedule(jobs, ab::Objective::lp(2)).value);
  }
}
BENCHMARK(BM_BruteForceSchedule)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

static void BM_WeightedMaxRun(benchmark::State& state) {
  ab::GeneratorSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.weight_decades = 6;
  const ab::Params params{{"c", "2"}, {"eps", "1/2"}};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(ab::run_experiment(spec, "weighted-max", params).bits_read);
  }
}
BENCHMARK(BM_WeightedMaxRun)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_UnrelatedMinRun(benchmark::State& state) {
  ab::GeneratorSpec spec;
  spec.kind = ab::GeneratorKind::kRandomUnrelated;
  spec.n = 12;
  spec.m = 2;
  spec.weight_decades = 6;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(ab::run_experiment(spec, "unrelated-min", {}).ratio);
  }
}
BENCHMARK(BM_UnrelatedMinRun)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
