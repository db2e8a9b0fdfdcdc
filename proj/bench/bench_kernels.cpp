// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "qcmp/comparator.hpp"
#include "qcmp/fuzz.hpp"
#include "qcmp/oracle.hpp"
#include "qcmp/random.hpp"

using namespace qcmp;

namespace {

std::vector<LassoWord> words(std::size_t n) {
  Rng rng(5);
  std::vector<LassoWord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_pair(rng, 4, 6, 6));
  return out;
}

template <bool Parallel>
void BM_AcceptsBatch(benchmark::State& state) {
  const auto cmp = ds_comparator(4, 2, Relation::LE);
  const auto ws = words(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? accepts_batch(cmp, ws) : accepts_batch_serial(cmp, ws));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Fuzz(benchmark::State& state) {
  FuzzConfig cfg;
  cfg.kind = AggKind::DiscountedSum;
  cfg.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? fuzz(cfg) : fuzz_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_BruteForce(benchmark::State& state) {
  Rng rng(3);
  const Alphabet al = Alphabet::uniform(1, 1);
  const auto P = random_weighted(rng, 3, al, 2, 3), Q = random_weighted(rng, 3, al, 2, 3);
  const AggSpec agg{AggKind::DiscountedSum, 2, Semantics::Sup};
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? brute_force_inclusion(P, Q, agg, false, bound, bound)
                                      : brute_force_inclusion_serial(P, Q, agg, false, bound, bound));
}

}  // namespace

BENCHMARK(BM_AcceptsBatch<false>)->Arg(2000);
BENCHMARK(BM_AcceptsBatch<true>)->Arg(2000);
BENCHMARK(BM_Fuzz<false>)->Arg(1000);
BENCHMARK(BM_Fuzz<true>)->Arg(1000);
BENCHMARK(BM_BruteForce<false>)->Arg(4)->Arg(5);
BENCHMARK(BM_BruteForce<true>)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
