#include "moodloom/knn_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "moodloom/error.hpp"

namespace moodloom {
namespace {

bool neighbor_less(const Neighbor& a, const Neighbor& b) {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.row->song_id < b.row->song_id;
}

FeatureWeights weights_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != kFeatureCount) throw ModelError("weights must hold 7 numbers");
  FeatureWeights w{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) w[i] = j[i].get<double>();
  return w;
}

}  // namespace

double weighted_distance(const FeatureVector& x, const FeatureVector& y, const FeatureWeights& w) {
  double sum = 0.0;
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    const double d = x[j] - y[j];
    sum += w[j] * d * d;
  }
  return std::sqrt(sum);
}

void validate(const KnnParams& params) {
  if (params.k == 0) throw ModelError("k must be positive");
  if (params.threshold == 0 || params.threshold > params.k) {
    throw ModelError("threshold must lie in [1, k]");
  }
  for (double w : params.weights) {
    if (!std::isfinite(w) || w < 0.0) throw ModelError("feature weights must be finite and >= 0");
  }
}

TrainedModel TrainedModel::build(std::vector<TrainingRow> rows, KnnParams params,
                                 ScalingParams scaling, AnalysisSettings analysis) {
  validate(params);
  if (rows.size() < params.k) {
    throw ModelError("model has " + std::to_string(rows.size()) + " training rows, fewer than k=" +
                     std::to_string(params.k));
  }
  for (const auto& row : rows) {
    if (row.classes.empty()) throw ModelError("training row '" + row.song_id + "' has no class");
    for (double v : row.vector.values) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ModelError("training row '" + row.song_id + "' is not scaled to [0, 1]");
      }
    }
  }
  TrainedModel model;
  model.rows_ = std::move(rows);
  model.params_ = params;
  model.scaling_ = scaling;
  model.analysis_ = std::move(analysis);
  return model;
}

TrainedModel TrainedModel::with_params(KnnParams params) const {
  validate(params);
  if (rows_.size() < params.k) throw ModelError("model has fewer training rows than k");
  TrainedModel copy = *this;
  copy.params_ = params;
  return copy;
}

nlohmann::json TrainedModel::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    rows.push_back({{"id", row.song_id},
                    {"classes", moodloom::to_json(row.classes)},
                    {"vector", moodloom::to_json(row.vector)}});
  }
  nlohmann::json features = nlohmann::json::array();
  for (auto name : kFeatureNames) features.push_back(std::string(name));
  return {
      {"format", "moodloom-model"},
      {"version", 1},
      {"k", params_.k},
      {"threshold", params_.threshold},
      {"weights", params_.weights},
      {"features", features},
      {"scaling", moodloom::to_json(scaling_)},
      {"analysis",
       {{"lexicon", analysis_.lexicon_path},
        {"tag_lexicon", analysis_.tag_lexicon_path},
        {"chorus_weight", analysis_.chorus_weight},
        {"verse_weight", analysis_.verse_weight},
        {"verb_dominance", analysis_.verb_dominance}}},
      {"rows", rows},
  };
}

TrainedModel TrainedModel::from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "moodloom-model") throw ModelError("not a moodloom model file");
    KnnParams params;
    params.k = j.at("k").get<std::size_t>();
    params.threshold = j.at("threshold").get<std::size_t>();
    params.weights = weights_from_json(j.at("weights"));
    const auto scaling = scaling_from_json(j.at("scaling"));

    AnalysisSettings analysis;
    if (j.contains("analysis")) {
      const auto& a = j["analysis"];
      analysis.lexicon_path = a.value("lexicon", "");
      analysis.tag_lexicon_path = a.value("tag_lexicon", "");
      analysis.chorus_weight = a.value("chorus_weight", 2.0);
      analysis.verse_weight = a.value("verse_weight", 1.0);
      analysis.verb_dominance = a.value("verb_dominance", 0.6);
    }

    std::vector<TrainingRow> rows;
    for (const auto& r : j.at("rows")) {
      rows.push_back({feature_vector_from_json(r.at("vector")), mood_set_from_json(r.at("classes")),
                      r.at("id").get<std::string>()});
    }
    return build(std::move(rows), params, scaling, std::move(analysis));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model: ") + e.what());
  } catch (const DataError& e) {
    throw ModelError(std::string("malformed model: ") + e.what());
  }
}

std::vector<Neighbor> nearest_neighbors(const TrainedModel& model, const FeatureVector& query) {
  const auto& rows = model.rows();
  std::vector<Neighbor> all;
  all.reserve(rows.size());
  for (const auto& row : rows) {
    all.push_back({&row, weighted_distance(query, row.vector, model.params().weights)});
  }
  const std::size_t k = std::min(model.params().k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    neighbor_less);
  all.resize(k);
  return all;
}

std::map<MoodClass, std::size_t> count_classes(std::span<const Neighbor> neighbors) {
  std::map<MoodClass, std::size_t> counts;
  for (const auto& n : neighbors) {
    for (auto c : n.row->classes.to_vector()) ++counts[c];
  }
  return counts;
}

ClassificationResult classify_counts(const std::map<MoodClass, std::size_t>& counts,
                                     std::size_t threshold) {
  ClassificationResult result;
  result.neighbor_counts = counts;
  for (std::size_t t = threshold; t >= 1; --t) {
    for (const auto& [cls, count] : counts) {
      if (count >= t) result.classes.insert(cls);
    }
    if (!result.classes.empty()) {
      result.effective_threshold = t;
      break;
    }
  }
  return result;
}

ClassificationResult classify(const TrainedModel& model, const FeatureVector& query) {
  const auto neighbors = nearest_neighbors(model, query);
  return classify_counts(count_classes(neighbors), model.params().threshold);
}

nlohmann::json to_json(const ClassificationResult& r) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [cls, n] : r.neighbor_counts) counts[std::string(to_string(cls))] = n;
  return {{"classes", to_json(r.classes)},
          {"neighbor_counts", counts},
          {"effective_threshold", r.effective_threshold}};
}

}  // namespace moodloom
