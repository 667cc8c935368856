#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "common.hpp"
#include "moodloom/tag_client.hpp"

namespace moodloom::cli {

struct LexiconBuildOptions {
  std::string core;
  std::string extended;
  std::string synonyms;
  std::vector<double> core_scale{1.0, 9.0};
  std::vector<double> extended_scale{1.0, 9.0};
  std::string out;
};

struct AnalyzeOptions {
  std::string lyrics;
};

struct FetchOptions {
  std::string tags_file;
  std::string fixture_dir;  // empty: LIVE
  std::string base_url = kDefaultTagServiceUrl;
  std::size_t limit = 50;
  std::size_t tag_limit = 20;
  double rate = 5.0;
  std::string out;
};

struct DatasetBuildOptions {
  std::string input;
  std::string audio_dir;
  std::string lyrics_dir;
  std::string out;
};

struct SplitOptions {
  std::string input;
  std::size_t folds = 4;
  std::string out_dir;
};

struct SynthOptions {
  std::size_t songs = 400;
  double spread = 0.12;
  double secondary_rate = 0.3;
  std::string out;
};

struct TrainOptions {
  std::vector<std::string> inputs;
  std::string out;
};

/// Flags that override what a stored model carries.
struct KnnOverrides {
  std::optional<std::size_t> k;
  std::optional<std::size_t> threshold;
  std::vector<double> weights;
};

struct ClassifyOptions {
  std::string model;
  std::string song;
  KnnOverrides overrides;
};

struct EvaluateOptions {
  std::string model;
  std::string test;
  std::vector<std::string> cv;
  KnnOverrides overrides;
  bool json = false;
  std::string out;
};

struct SweepOptions {
  std::string input;
  std::size_t folds = 4;
  std::vector<std::size_t> k_values{kDefaultK};
  std::vector<std::size_t> thresholds{1, kDefaultThreshold};
  std::vector<std::string> vary;  // feature=v1,v2,...
  bool json = false;
  std::string out;
};

int lexicon_build(const LexiconBuildOptions& o, std::ostream& out, std::ostream& err);
int analyze(const RunConfig& rc, const AnalyzeOptions& o, std::ostream& out, std::ostream& err);
int fetch(const RunConfig& rc, const FetchOptions& o, std::ostream& out, std::ostream& err);
int dataset_build(const RunConfig& rc, const DatasetBuildOptions& o, std::ostream& out,
                  std::ostream& err);
int dataset_split(const RunConfig& rc, const SplitOptions& o, std::ostream& out, std::ostream& err);
int dataset_synth(const RunConfig& rc, const SynthOptions& o, std::ostream& out, std::ostream& err);
int train(const RunConfig& rc, const TrainOptions& o, std::ostream& out, std::ostream& err);
int classify(const RunConfig& rc, const ClassifyOptions& o, std::ostream& out, std::ostream& err);
int evaluate(const RunConfig& rc, const EvaluateOptions& o, std::ostream& out, std::ostream& err);
int sweep(const RunConfig& rc, const SweepOptions& o, std::ostream& out, std::ostream& err);

/// Reads JSON Lines records and fills in missing feature vectors from
/// lyrics and audio, resolving lyric paths against the file's directory.
std::vector<SongRecord> load_records_with_features(const std::string& path, const RunConfig& rc);

}  // namespace moodloom::cli
