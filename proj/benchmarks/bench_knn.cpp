#include <benchmark/benchmark.h>

#include "moodloom/pipeline.hpp"
#include "moodloom/synthetic.hpp"

namespace {

using namespace moodloom;

std::vector<SongRecord> dataset(std::size_t songs) {
  SyntheticConfig cfg;
  cfg.songs = songs;
  cfg.seed = 7;
  return generate_synthetic_dataset(cfg);
}

void BM_WeightedDistance(benchmark::State& state) {
  const FeatureVector a{5.1, 4.2, 0.6, 0.7, 0.3, 1.0, 120.0};
  const FeatureVector b{6.3, 3.9, 0.4, 0.5, 0.1, 0.0, 95.0};
  for (auto _ : state) benchmark::DoNotOptimize(weighted_distance(a, b));
}
BENCHMARK(BM_WeightedDistance);

void BM_Classify(benchmark::State& state) {
  const auto records = dataset(static_cast<std::size_t>(state.range(0)));
  const auto model = train_model(records, KnnParams{});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict(model, *records[i].vector));
    i = (i + 1) % records.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Classify)->Arg(400)->Arg(2000)->Arg(10000);

void BM_CrossValidate(benchmark::State& state) {
  const auto records = dataset(static_cast<std::size_t>(state.range(0)));
  const auto folds = stratified_partition(records, 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate(folds, KnnParams{}));
}
BENCHMARK(BM_CrossValidate)->Arg(400)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
