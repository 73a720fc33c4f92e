#include <benchmark/benchmark.h>

#include "funcest/approx.hpp"
#include "funcest/baselines.hpp"
#include "funcest/bench.hpp"
#include "funcest/composite.hpp"
#include "funcest/estimators.hpp"
#include "funcest/methods.hpp"
#include "funcest/synth.hpp"

using namespace funcest;

namespace {

Histogram sparse_uniform(std::size_t s) {
  SeededRng rng(1);
  return sample_multinomial(uniform_dist(s), SampleRule::parse("sparse:5").resolve(s), rng);
}

void BM_JvhwEntropy(benchmark::State& state) {
  const auto h = sparse_uniform(static_cast<std::size_t>(state.range(0)));
  (void)estimate_entropy(h);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_entropy(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JvhwEntropy)->RangeMultiplier(10)->Range(1'000, 100'000)->Complexity(benchmark::oN);

void BM_JvhwFalpha(benchmark::State& state) {
  const auto h = sparse_uniform(static_cast<std::size_t>(state.range(0)));
  (void)estimate_falpha(h, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_falpha(h, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JvhwFalpha)->RangeMultiplier(10)->Range(1'000, 100'000)->Complexity(benchmark::oN);

void BM_Mle(benchmark::State& state) {
  const auto h = sparse_uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mle_entropy(h));
}
BENCHMARK(BM_Mle)->RangeMultiplier(10)->Range(1'000, 100'000);

void BM_Grassberger(benchmark::State& state) {
  const auto h = sparse_uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grassberger_entropy(h));
}
BENCHMARK(BM_Grassberger)->RangeMultiplier(10)->Range(1'000, 100'000);

void BM_RemezEntropy(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(remez(TargetFunction::neg_x_log_x(), k).sup_error);
}
BENCHMARK(BM_RemezEntropy)->Arg(5)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_MutualInformation(benchmark::State& state) {
  SeededRng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xs = sample_categorical(zipf_dist(100, 1.0), n, rng);
  const auto ys = sample_categorical(uniform_dist(100), n, rng);
  const auto ph = PairHistogram::from_samples(xs, ys);
  const auto f = make_entropy_fn(EntropyMethod::Jvhw);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mi(ph, f));
}
BENCHMARK(BM_MutualInformation)->Arg(2'500)->Arg(25'000);

}  // namespace

BENCHMARK_MAIN();
