#include <benchmark/benchmark.h>

#include "cttstylo/features.hpp"
#include "cttstylo/rng.hpp"
#include "cttstylo/stats.hpp"
#include "synthetic.hpp"

using namespace cttstylo;

namespace {

std::vector<Chunk> synthetic_chunks(std::size_t docs_per_group) {
  auto spec = cttstylo::testing::three_group_spec(3);
  spec.docs_per_group = docs_per_group;
  std::vector<Chunk> out;
  for (const auto& d : cttstylo::testing::synthetic_corpus(spec)) {
    for (auto& c : chunk_document(d, ChunkParams{400, 200})) out.push_back(std::move(c));
  }
  return out;
}

void BM_ExtractGenericAndCtt(benchmark::State& state) {
  const auto chunks = synthetic_chunks(static_cast<std::size_t>(state.range(0)));
  ExtractionConfig cfg;
  for (auto f : {Family::Readability, Family::Ngram, Family::Rhythm, Family::Misc}) cfg.set(f, false);
  std::size_t tokens = 0;
  for (const auto& c : chunks) tokens += c.token_count;
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(chunks, LexiconBundle{}, cfg));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tokens));
}
BENCHMARK(BM_ExtractGenericAndCtt)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ChiSquare(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Matrix x(rows, 300);
  std::vector<int> y(rows);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < 300; ++j) names.push_back("f" + std::to_string(j));
  for (std::size_t i = 0; i < rows; ++i) {
    y[i] = static_cast<int>(i % 3);
    for (std::size_t j = 0; j < 300; ++j) x(i, j) = rng.uniform();
  }
  for (auto _ : state) benchmark::DoNotOptimize(chi_square_scores(x, y, names));
}
BENCHMARK(BM_ChiSquare)->Arg(100)->Arg(1000);

}  // namespace
