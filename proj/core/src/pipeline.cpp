#include "moodloom/pipeline.hpp"

#include <filesystem>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {

LyricAnalyzer LyricAnalyzer::load(const std::string& lexicon_path,
                                  const std::string& tag_lexicon_path,
                                  SegmentationConfig segmentation, AffectConfig affect) {
  return LyricAnalyzer{load_lexicon(lexicon_path, {0.0, 10.0}, LexiconSource::Anew),
                       PosTagger::load(tag_lexicon_path), segmentation, affect};
}

SongAnalysis LyricAnalyzer::analyze_text(std::string_view lyrics, std::string source_id) const {
  const auto doc = parse_lyrics(lyrics, segmentation, std::move(source_id));
  return AffectEngine(lexicon, tagger, affect).analyze(doc);
}

FeatureVector compute_features(const SongRecord& record, const LyricAnalyzer& analyzer,
                               const std::string& base_dir) {
  if (!record.audio) throw DataError("song '" + record.id() + "' has no audio features");
  if (record.lyrics.empty()) throw DataError("song '" + record.id() + "' has no lyrics file");
  std::filesystem::path path(record.lyrics);
  if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
  std::string lyrics;
  try {
    lyrics = text::read_file(path.string());
  } catch (const LoadError& e) {
    throw DataError("song '" + record.id() + "': " + e.what());
  }
  const auto analysis = analyzer.analyze_text(lyrics, record.id());
  return assemble_features(analysis.song, *record.audio);
}

TrainedModel train_model(std::span<const SongRecord> records, const KnnParams& params,
                         AnalysisSettings analysis) {
  require_unique(records);
  std::vector<FeatureVector> raw;
  raw.reserve(records.size());
  for (const auto& r : records) {
    if (!r.vector) throw DataError("song '" + r.id() + "' has no feature vector");
    raw.push_back(*r.vector);
  }
  const auto scaling = fit_scaling(raw);
  std::vector<TrainingRow> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    rows.push_back({scale(raw[i], scaling), records[i].classes, records[i].id()});
  }
  return TrainedModel::build(std::move(rows), params, scaling, std::move(analysis));
}

ClassificationResult predict(const TrainedModel& model, const FeatureVector& unscaled) {
  return classify(model, scale(unscaled, model.scaling()));
}

SetEvaluation evaluate_records(const TrainedModel& model, std::span<const SongRecord> test,
                               bool symmetrize, std::string name) {
  SongClasses predictions;
  SongClasses truth;
  for (const auto& r : test) {
    if (!r.vector) throw DataError("song '" + r.id() + "' has no feature vector");
    truth[r.id()] = r.classes;
    if (!r.classes.empty()) predictions[r.id()] = predict(model, *r.vector).classes;
  }
  return evaluate(predictions, truth, symmetrize, std::move(name));
}

AccuracyReport cross_validate(std::span<const Fold> folds, const KnnParams& params,
                              bool symmetrize) {
  AccuracyReport report;
  for (const auto& held_out : folds) {
    std::vector<SongRecord> training;
    for (const auto& fold : folds) {
      if (fold.index == held_out.index) continue;
      training.insert(training.end(), fold.records.begin(), fold.records.end());
    }
    const auto model = train_model(training, params);
    report.sets.push_back(
        evaluate_records(model, held_out.records, symmetrize, std::to_string(held_out.index)));
  }
  return report;
}

}  // namespace moodloom
