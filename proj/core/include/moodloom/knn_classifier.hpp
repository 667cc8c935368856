#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "moodloom/feature_space.hpp"
#include "moodloom/mood.hpp"

namespace moodloom {

using FeatureWeights = std::array<double, kFeatureCount>;

/// danceability, loudness, valence, bpm, energy, mode, arousal.
inline constexpr FeatureWeights kDefaultFeatureWeights = {1.0, 0.7, 1.0, 0.8, 1.0, 0.5, 0.9};
inline constexpr FeatureWeights kUnitFeatureWeights = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

inline constexpr std::size_t kDefaultK = 30;
inline constexpr std::size_t kDefaultThreshold = 13;

/// sqrt(sum_j w_j (x_j - y_j)^2)
double weighted_distance(const FeatureVector& x, const FeatureVector& y,
                         const FeatureWeights& w = kDefaultFeatureWeights);

struct TrainingRow {
  FeatureVector vector;  // scaled
  MoodSet classes;
  std::string song_id;
};

struct KnnParams {
  std::size_t k = kDefaultK;
  std::size_t threshold = kDefaultThreshold;
  FeatureWeights weights = kDefaultFeatureWeights;
};

/// Throws ModelError unless 1 <= threshold <= k and all weights are finite
/// and non-negative.
void validate(const KnnParams& params);

/// Analysis settings recorded so `classify` can score lyrics the same way
/// the training songs were scored.
struct AnalysisSettings {
  std::string lexicon_path;
  std::string tag_lexicon_path;
  double chorus_weight = 2.0;
  double verse_weight = 1.0;
  double verb_dominance = 0.6;
};

class TrainedModel {
 public:
  /// Validates rows (non-empty classes, scaled vectors) and params; throws
  /// ModelError when there are fewer rows than k.
  static TrainedModel build(std::vector<TrainingRow> rows, KnnParams params, ScalingParams scaling,
                            AnalysisSettings analysis = {});

  /// Same rows and scaling under different kNN parameters.
  TrainedModel with_params(KnnParams params) const;

  const std::vector<TrainingRow>& rows() const { return rows_; }
  const KnnParams& params() const { return params_; }
  const ScalingParams& scaling() const { return scaling_; }
  const AnalysisSettings& analysis() const { return analysis_; }

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& j);

 private:
  TrainedModel() = default;

  std::vector<TrainingRow> rows_;
  KnnParams params_;
  ScalingParams scaling_;
  AnalysisSettings analysis_;
};

struct Neighbor {
  const TrainingRow* row = nullptr;
  double distance = 0.0;
};

/// The k rows closest to `query` (already scaled), ascending by distance,
/// ties broken by ascending song id.
std::vector<Neighbor> nearest_neighbors(const TrainedModel& model, const FeatureVector& query);

struct ClassificationResult {
  MoodSet classes;
  std::map<MoodClass, std::size_t> neighbor_counts;
  std::size_t effective_threshold = 0;
};

nlohmann::json to_json(const ClassificationResult& r);

/// Per-class occurrence counts over a neighbor list; a multi-label neighbor
/// counts once for each of its classes.
std::map<MoodClass, std::size_t> count_classes(std::span<const Neighbor> neighbors);

/// Assigns every class reaching `threshold`; if none does, lowers the
/// threshold one step at a time and stops at the first level that assigns
/// something. Empty `counts` yields an empty result at threshold 0.
ClassificationResult classify_counts(const std::map<MoodClass, std::size_t>& counts,
                                     std::size_t threshold);

ClassificationResult classify(const TrainedModel& model, const FeatureVector& query);

}  // namespace moodloom
