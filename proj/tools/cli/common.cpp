#include "common.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "moodloom/error.hpp"

namespace moodloom::cli {

KnnParams RunConfig::knn() const {
  KnnParams p;
  p.k = k;
  p.threshold = threshold;
  if (!weights.empty()) p.weights = parse_weights(weights);
  validate(p);
  return p;
}

AnalysisSettings RunConfig::analysis() const {
  return {lexicon_path, tag_lexicon_path, chorus_weight, verse_weight, alpha};
}

LyricAnalyzer RunConfig::load_analyzer() const {
  return LyricAnalyzer::load(lexicon_path, tag_lexicon_path, {chorus_weight, verse_weight},
                             {alpha, AffectConfig{}.negation_window});
}

std::string default_data_dir() {
  if (const char* env = std::getenv("MOODLOOM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  if (std::filesystem::is_directory(MOODLOOM_SOURCE_DATA_DIR)) return MOODLOOM_SOURCE_DATA_DIR;
  return MOODLOOM_INSTALL_DATA_DIR;
}

std::string default_lexicon_path() { return default_data_dir() + "/lexicon/moodloom_lexicon.csv"; }
std::string default_tag_lexicon_path() { return default_data_dir() + "/pos/tag_lexicon.tsv"; }

void resolve_resources(RunConfig& config) {
  if (config.lexicon_path.empty()) config.lexicon_path = default_lexicon_path();
  if (config.tag_lexicon_path.empty()) config.tag_lexicon_path = default_tag_lexicon_path();
}

FeatureWeights parse_weights(const std::vector<double>& values) {
  if (values.size() != kFeatureCount) {
    throw ConfigError("--weights takes " + std::to_string(kFeatureCount) + " comma-separated values");
  }
  FeatureWeights w{};
  std::copy(values.begin(), values.end(), w.begin());
  return w;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write " + path);
  file << content;
  if (!file) throw DataError("write failed: " + path);
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace moodloom::cli
