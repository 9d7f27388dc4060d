#include <benchmark/benchmark.h>

#include "cttstylo/classify.hpp"
#include "cttstylo/cluster.hpp"
#include "cttstylo/rng.hpp"

using namespace cttstylo;

namespace {

Matrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) x(i, j) = (i % 2 ? 1.0 : 0.0) + rng.normal();
  }
  return x;
}

void BM_Kmeans(benchmark::State& state) {
  const auto x = gaussian(static_cast<std::size_t>(state.range(0)), 30, 2);
  KmeansParams p;
  p.k = 4;
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(x, p));
}
BENCHMARK(BM_Kmeans)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_RandomForestTrain(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const auto x = gaussian(rows, 30, 3);
  std::vector<int> y(rows);
  for (std::size_t i = 0; i < rows; ++i) y[i] = static_cast<int>(i % 2);
  for (auto _ : state) benchmark::DoNotOptimize(train(ClassifierKind::RandomForest, x, y, {}, 1));
}
BENCHMARK(BM_RandomForestTrain)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EnsembleCv(benchmark::State& state) {
  const auto x = gaussian(200, 30, 4);
  std::vector<int> y(200);
  for (std::size_t i = 0; i < 200; ++i) y[i] = static_cast<int>(i % 2);
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_accuracy(x, y, {}, CvPlan{5, 1, Grouping::Chunk}));
}
BENCHMARK(BM_EnsembleCv)->Unit(benchmark::kMillisecond);

void BM_DeltaDendrogram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> units(n);
  for (std::size_t d = 0; d < n; ++d) {
    ids.push_back("doc" + std::to_string(d));
    for (int t = 0; t < 5000; ++t) units[d].push_back("w" + std::to_string(rng.index(400)));
  }
  for (auto _ : state) {
    const auto table = mfw_table(ids, units, 100);
    const auto dist = delta_matrix(table);
    benchmark::DoNotOptimize(agglomerative_cluster(dist, ids));
  }
}
BENCHMARK(BM_DeltaDendrogram)->Arg(21)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
