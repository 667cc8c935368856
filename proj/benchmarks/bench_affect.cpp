#include <benchmark/benchmark.h>

#include <string>

#include "moodloom/pipeline.hpp"

namespace {

using namespace moodloom;

const LyricAnalyzer& analyzer() {
  static const auto a = LyricAnalyzer::load(MOODLOOM_DATA_DIR "/lexicon/moodloom_lexicon.csv",
                                            MOODLOOM_DATA_DIR "/pos/tag_lexicon.tsv");
  return a;
}

std::string song(int verses) {
  std::string text;
  for (int v = 0; v < verses; ++v) {
    text += "[Verse]\nI walk alone in the cold dark rain\nno sweet dream can hold my broken heart\n"
            "the lonely road is long tonight\n\n";
    text += "[Chorus]\nhappy love and bright sunshine\nwe dance in the warm summer light\n\n";
  }
  return text;
}

void BM_ParseLyrics(benchmark::State& state) {
  const auto text = song(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parse_lyrics(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseLyrics)->Arg(2)->Arg(8);

void BM_AnalyzeSong(benchmark::State& state) {
  const auto& a = analyzer();
  const auto text = song(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a.analyze_text(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_AnalyzeSong)->Arg(2)->Arg(8);

}  // namespace
