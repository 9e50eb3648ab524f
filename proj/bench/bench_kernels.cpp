// Serial reference kernels against their OpenMP counterparts on planted logs.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "sessioncomm/graph.hpp"
#include "sessioncomm/kernels.hpp"
#include "sessioncomm/synth.hpp"

using namespace sessioncomm;

namespace {

const ObjectIndex& planted_index(std::size_t sessions) {
  static std::map<std::size_t, ObjectIndex> cache;
  auto it = cache.find(sessions);
  if (it == cache.end()) {
    PlantedConfig cfg;
    cfg.groups = 10;
    cfg.sessions_per_group = sessions / cfg.groups;
    cfg.seed = 1;
    auto log = generate_planted_log(cfg);
    it = cache.emplace(sessions, index_objects(sessionize(log.records, {cfg.inactivity_threshold}))).first;
  }
  return it->second;
}

const CsrMatrix& planted_matrix(std::size_t sessions) {
  static std::map<std::size_t, CsrMatrix> cache;
  auto it = cache.find(sessions);
  if (it == cache.end()) {
    it = cache.emplace(sessions, kernels::omp::overlap_similarity(planted_index(sessions).overlap)).first;
  }
  return it->second;
}

std::vector<double> random_vector(std::size_t n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

template <CsrMatrix (*Kernel)(const OverlapInput&)>
void BM_Overlap(benchmark::State& state) {
  const auto& index = planted_index(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(index.overlap));
}

template <void (*Kernel)(const CsrMatrix&, std::span<const double>, std::span<double>)>
void BM_Spmv(benchmark::State& state) {
  const auto& m = planted_matrix(static_cast<std::size_t>(state.range(0)));
  auto x = random_vector(m.cols);
  std::vector<double> y(m.rows);
  for (auto _ : state) {
    Kernel(m, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.nnz()));
}

template <double (*Kernel)(std::span<const double>, std::span<const double>)>
void BM_Dot(benchmark::State& state) {
  auto a = random_vector(static_cast<std::size_t>(state.range(0)));
  auto b = random_vector(a.size());
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Overlap<kernels::serial::overlap_similarity>)->Name("overlap/serial")->Arg(1000)->Arg(5000);
BENCHMARK(BM_Overlap<kernels::omp::overlap_similarity>)->Name("overlap/omp")->Arg(1000)->Arg(5000);
BENCHMARK(BM_Spmv<kernels::serial::spmv>)->Name("spmv/serial")->Arg(1000)->Arg(5000);
BENCHMARK(BM_Spmv<kernels::omp::spmv>)->Name("spmv/omp")->Arg(1000)->Arg(5000);
BENCHMARK(BM_Dot<kernels::serial::dot>)->Name("dot/serial")->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_Dot<kernels::omp::dot>)->Name("dot/omp")->Arg(1 << 16)->Arg(1 << 22);

BENCHMARK_MAIN();
