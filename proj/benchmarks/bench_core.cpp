#include <benchmark/benchmark.h>

#include "risd2d/montecarlo.hpp"
#include "risd2d/optimize.hpp"
#include "risd2d/rate.hpp"

using namespace risd2d;

namespace {

SystemConfig scenario(std::size_t pairs, std::size_t elements) {
  return make_uniform_config(pairs, elements, 10.0, 10.0, {0.05, 0.05, 4.0},
                             PhaseDomain::discrete(2), 1);
}

void BM_GammaTilde(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  const auto cfg = scenario(1, l);
  Rng rng = make_rng(1, 0);
  const auto theta = random_phases(l, PhaseDomain::continuous(), rng).theta;
  for (auto _ : state) benchmark::DoNotOptimize(gamma_tilde(theta, 0.8, 0, 0, cfg.geometry));
}
BENCHMARK(BM_GammaTilde)->Arg(16)->Arg(64)->Arg(400);

void BM_GammaTildePairwise(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  const auto cfg = scenario(1, l);
  Rng rng = make_rng(1, 0);
  const auto theta = random_phases(l, PhaseDomain::continuous(), rng).theta;
  for (auto _ : state)
    benchmark::DoNotOptimize(gamma_tilde_pairwise(theta, 0.8, 0, 0, cfg.geometry));
}
BENCHMARK(BM_GammaTildePairwise)->Arg(16)->Arg(64)->Arg(400);

void BM_SumRate(benchmark::State& state) {
  const auto cfg = scenario(static_cast<std::size_t>(state.range(0)), 16);
  Rng rng = make_rng(2, 0);
  const auto theta = random_phases(16, cfg.domain, rng).theta;
  for (auto _ : state) benchmark::DoNotOptimize(sum_rate(cfg, theta, Objective::general));
}
BENCHMARK(BM_SumRate)->Arg(2)->Arg(6);

void BM_McDraws(benchmark::State& state) {
  const auto cfg = scenario(6, 16);
  Rng rng = make_rng(3, 0);
  const auto phases = random_phases(16, cfg.domain, rng);
  McParams mc;
  mc.channel_draws = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(ergodic_rate_mc(cfg, phases, mc).sum.mean);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_McDraws)->Unit(benchmark::kMillisecond);

void BM_GaGeneration(benchmark::State& state) {
  const auto cfg = scenario(6, 16);
  GaParams ga;
  ga.generations = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(ga_optimize(cfg, Objective::general, cfg.domain, ga).best_sum_rate);
}
BENCHMARK(BM_GaGeneration)->Unit(benchmark::kMicrosecond);

void BM_ExhaustiveL9B2(benchmark::State& state) {
  const auto cfg = scenario(2, 9);
  for (auto _ : state)
    benchmark::DoNotOptimize(exhaustive_search(cfg, Objective::general, 2).best_sum_rate);
}
BENCHMARK(BM_ExhaustiveL9B2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
