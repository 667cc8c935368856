#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moodloom/affect_engine.hpp"
#include "moodloom/dataset.hpp"
#include "moodloom/knn_classifier.hpp"

namespace moodloom {

/// Lexicon, tagger and settings needed to turn lyric text into affect.
struct LyricAnalyzer {
  Lexicon lexicon;
  PosTagger tagger;
  SegmentationConfig segmentation;
  AffectConfig affect;

  static LyricAnalyzer load(const std::string& lexicon_path, const std::string& tag_lexicon_path,
                            SegmentationConfig segmentation = {}, AffectConfig affect = {});

  /// Throws EmptyLyricsError or AffectUnavailableError.
  SongAnalysis analyze_text(std::string_view lyrics, std::string source_id = {}) const;
};

/// Feature vector for a record: lyrics file (resolved against `base_dir`
/// when relative) plus its audio features. Throws DataError when either is
/// missing.
FeatureVector compute_features(const SongRecord& record, const LyricAnalyzer& analyzer,
                               const std::string& base_dir = {});

/// Fits scaling on the records' vectors and builds a model. Every record
/// needs a vector and at least one class.
TrainedModel train_model(std::span<const SongRecord> records, const KnnParams& params,
                         AnalysisSettings analysis = {});

/// Scales the record's vector with the model's params and classifies it.
ClassificationResult predict(const TrainedModel& model, const FeatureVector& unscaled);

/// Predicts every record of `test` and scores against its classes.
SetEvaluation evaluate_records(const TrainedModel& model, std::span<const SongRecord> test,
                               bool symmetrize, std::string name);

/// Each fold in turn is the test set, the rest the training set.
AccuracyReport cross_validate(std::span<const Fold> folds, const KnnParams& params,
                              bool symmetrize = false);

}  // namespace moodloom
