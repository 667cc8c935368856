#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "moodloom/knn_classifier.hpp"
#include "moodloom/pipeline.hpp"

namespace moodloom::cli {

/// Settings shared by the subcommands; defaults are the published ones.
struct RunConfig {
  std::string lexicon_path;
  std::string tag_lexicon_path;
  double chorus_weight = 2.0;
  double verse_weight = 1.0;
  double alpha = 0.6;
  std::size_t k = kDefaultK;
  std::size_t threshold = kDefaultThreshold;
  std::vector<double> weights;  // empty: defaults
  std::uint64_t seed = 1;
  int min_tag_weight = kDefaultMinTagWeight;
  bool symmetrize = false;
  std::size_t jobs = 4;

  KnnParams knn() const;
  AnalysisSettings analysis() const;
  LyricAnalyzer load_analyzer() const;
};

/// MOODLOOM_DATA_DIR, else the source tree's data/, else the installed copy.
std::string default_data_dir();
std::string default_lexicon_path();
std::string default_tag_lexicon_path();

/// Fills empty resource paths in `config` with the defaults.
void resolve_resources(RunConfig& config);

FeatureWeights parse_weights(const std::vector<double>& values);

/// Writes to `path`, or to `out` when path is empty or "-".
void write_output(const std::string& path, const std::string& content, std::ostream& out);

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

std::string format_double(double v, int precision = 4);

}  // namespace moodloom::cli
