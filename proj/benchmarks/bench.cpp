#include <benchmark/benchmark.h>

#include "princlat/construction.hpp"

using namespace princlat;

namespace {

Poset from_pairs(std::size_t n, const std::vector<IndexPair>& pairs) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return Poset::from_quasiorder(quos(n, pairs, labels));
}

Poset chain(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (Index i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return from_pairs(n, pairs);
}

/// 0 below k incomparable middles below 1.
Poset antichain(std::size_t k) {
  std::vector<IndexPair> pairs;
  for (Index i = 1; i <= k; ++i) {
    pairs.emplace_back(0, i);
    pairs.emplace_back(i, Index(k + 1));
  }
  return from_pairs(k + 2, pairs);
}

void BM_RepresentChain(benchmark::State& state) {
  const Poset p = chain(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(represent(p));
  state.counters["elements"] = double(represent(p).lattice().size());
}
BENCHMARK(BM_RepresentChain)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_RepresentAntichain(benchmark::State& state) {
  const Poset p = antichain(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(represent(p));
  state.counters["elements"] = double(represent(p).lattice().size());
}
BENCHMARK(BM_RepresentAntichain)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMillisecond);

void BM_Cg(benchmark::State& state) {
  const FiniteLattice l = represent(chain(std::size_t(state.range(0)))).lattice();
  const auto pairs = ordered_pairs(l);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& pr = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(cg(l, pr.lo, pr.hi));
  }
  state.counters["elements"] = double(l.size());
}
BENCHMARK(BM_Cg)->DenseRange(3, 7, 2);

void BM_Princ(benchmark::State& state) {
  const FiniteLattice l = represent(chain(std::size_t(state.range(0)))).lattice();
  for (auto _ : state) benchmark::DoNotOptimize(princ(l));
  state.counters["elements"] = double(l.size());
}
BENCHMARK(BM_Princ)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

void BM_CheckAux(benchmark::State& state) {
  const AuxStructure a = represent(antichain(std::size_t(state.range(0)))).aux;
  for (auto _ : state) benchmark::DoNotOptimize(check_aux(a));
  state.counters["elements"] = double(a.lattice.size());
}
BENCHMARK(BM_CheckAux)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
