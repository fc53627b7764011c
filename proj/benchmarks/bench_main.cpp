#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "loxogen/counting.hpp"
#include "loxogen/garside.hpp"
#include "loxogen/psl2z.hpp"

namespace {

using namespace loxogen;

void BM_CountSphere(benchmark::State& state) {
  const Automaton aut = psl2z::build_automaton();
  const unsigned l = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_sphere(aut, l));
}
BENCHMARK(BM_CountSphere)->Arg(30)->Arg(100)->Arg(1000);

void BM_GrowthRate(benchmark::State& state) {
  const Automaton aut = garside::build_automaton(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(language_growth_rate(aut).rate);
}
BENCHMARK(BM_GrowthRate)->Arg(3)->Arg(4)->Arg(5);

void BM_EnumerateRigidity(benchmark::State& state) {
  const Automaton aut = psl2z::build_automaton();
  const unsigned l = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rigid_sphere_count(aut, l));
}
BENCHMARK(BM_EnumerateRigidity)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

std::vector<std::pair<psl2z::FareyVertex, psl2z::FareyVertex>> random_pairs(long height) {
  std::mt19937_64 rng(1);
  std::vector<std::pair<psl2z::FareyVertex, psl2z::FareyVertex>> out;
  auto vertex = [&] {
    for (;;) {
      const long q = static_cast<long>(rng() % static_cast<unsigned long>(height + 1));
      const long p = static_cast<long>(rng() % static_cast<unsigned long>(2 * (height - q) + 1)) -
                     (height - q);
      if ((p != 0 || q != 0) && std::gcd(p, q) == 1) return psl2z::FareyVertex(p, q);
    }
  };
  for (int i = 0; i < 64; ++i) out.emplace_back(vertex(), vertex());
  return out;
}

void BM_FareyDistance(benchmark::State& state) {
  const auto pairs = random_pairs(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [u, v] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(psl2z::farey_distance(u, v));
  }
}
BENCHMARK(BM_FareyDistance)->Arg(30)->Arg(1000)->Arg(1000000);

void BM_FareyLadder(benchmark::State& state) {
  const auto pairs = random_pairs(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [u, v] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(psl2z::farey_distance_ladder(u, v));
  }
}
BENCHMARK(BM_FareyLadder)->Arg(30)->Arg(1000);

void BM_UniformSample(benchmark::State& state) {
  const Automaton aut = psl2z::build_automaton();
  const UniformSampler s(aut, static_cast<unsigned>(state.range(0)));
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(rng));
}
BENCHMARK(BM_UniformSample)->Arg(16)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
