#include <benchmark/benchmark.h>

#include <random>

#include "altdiff/altop.hpp"
#include "altdiff/ddt.hpp"
#include "altdiff/homega.hpp"
#include "altdiff/sbox_corpus.hpp"
#include "altdiff/spnlab.hpp"

using namespace altdiff;

static void BM_Inverse16(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto m = gf2::random_invertible(16, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gf2::inverse(m));
}
BENCHMARK(BM_Inverse16);

static void BM_MakeTable8(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto op = altop::AltOperation::build(altop::random_valid_spec(8, static_cast<int>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(op.make_table());
}
BENCHMARK(BM_MakeTable8)->Arg(2)->Arg(5)->Arg(6);

static void BM_UniformityCircAes(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto table = altop::AltOperation::build(altop::random_valid_spec(8, 5, rng)).make_table();
  for (auto _ : state) benchmark::DoNotOptimize(ddt::uniformity_circ(corpus::aes(), table));
}
BENCHMARK(BM_UniformityCircAes);

static void BM_DdtPlusAes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ddt::ddt_plus(corpus::aes()));
}
BENCHMARK(BM_DdtPlusAes);

static void BM_Conjugates105(benchmark::State& state) {
  const auto op = altop::two_strong_operation(4, gf2::BitVec::parse_binary("01"));
  for (auto _ : state) benchmark::DoNotOptimize(altop::enumerate_conjugates(op));
}
BENCHMARK(BM_Conjugates105)->Unit(benchmark::kMillisecond);

static void BM_SampleParallel(benchmark::State& state) {
  const auto op = spnlab::toy_operation();
  std::mt19937_64 rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(homega::sample_parallel(op, rng));
}
BENCHMARK(BM_SampleParallel);

static void BM_MarkovSixRounds(benchmark::State& state) {
  const auto op = spnlab::toy_operation();
  const spnlab::SpnShape shape(corpus::gamma(), homega::sample_parallel(op, 5).matrix);
  const spnlab::MarkovModel model(shape, op);
  for (auto _ : state) benchmark::DoNotOptimize(model.best(0x0001, spnlab::Flavor::Circ, 1, 6));
}
BENCHMARK(BM_MarkovSixRounds)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloOneKey(benchmark::State& state) {
  const auto op = spnlab::toy_operation();
  const spnlab::SpnShape shape(corpus::gamma(), homega::sample_parallel(op, 6).matrix);
  spnlab::MonteCarloConfig cfg;
  cfg.keys = 1;
  cfg.deltas = {0x0001};
  for (auto _ : state)
    benchmark::DoNotOptimize(spnlab::best_differential_montecarlo(shape, op, cfg, Executor::sequential()));
}
BENCHMARK(BM_MonteCarloOneKey)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
