#include "moodloom/feature_space.hpp"

#include <algorithm>
#include <cmath>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {
namespace {

std::array<double, kFeatureCount> array_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != kFeatureCount) {
    throw DataError(std::string(what) + " must be an array of 7 numbers");
  }
  std::array<double, kFeatureCount> out{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (!j[i].is_number()) throw DataError(std::string(what) + " must contain numbers");
    out[i] = j[i].get<double>();
  }
  return out;
}

constexpr std::size_t kModeIndex = static_cast<std::size_t>(Feature::Mode);

}  // namespace

void validate(const AudioFeatures& a) {
  if (!(a.bpm > 0.0) || !std::isfinite(a.bpm)) throw DataError("bpm must be positive");
  if (!(a.danceability >= 0.0 && a.danceability <= 1.0)) {
    throw DataError("danceability must lie in [0, 1]");
  }
  if (!(a.energy >= 0.0 && a.energy <= 1.0)) throw DataError("energy must lie in [0, 1]");
  if (!std::isfinite(a.loudness_db)) throw DataError("loudness_db must be finite");
}

AudioFeatures audio_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("audio features must be a JSON object");
  AudioFeatures a;
  try {
    a.bpm = j.at("bpm").get<double>();
    a.loudness_db = j.at("loudness_db").get<double>();
    a.danceability = j.at("danceability").get<double>();
    a.energy = j.at("energy").get<double>();
    const auto& mode = j.at("mode");
    if (mode.is_string()) {
      const auto m = text::to_lower(mode.get<std::string>());
      if (m == "major") a.mode = Mode::Major;
      else if (m == "minor") a.mode = Mode::Minor;
      else throw DataError("mode must be \"major\" or \"minor\"");
    } else if (mode.is_number_integer() && (mode == 0 || mode == 1)) {
      a.mode = mode.get<int>() == 1 ? Mode::Major : Mode::Minor;
    } else {
      throw DataError("mode must be \"major\" or \"minor\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("audio features: ") + e.what());
  }
  validate(a);
  return a;
}

nlohmann::json to_json(const AudioFeatures& a) {
  return {{"bpm", a.bpm},
          {"mode", a.mode == Mode::Major ? "major" : "minor"},
          {"loudness_db", a.loudness_db},
          {"danceability", a.danceability},
          {"energy", a.energy}};
}

std::optional<Feature> parse_feature(std::string_view name) {
  const auto lc = text::to_lower(text::trim(name));
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (lc == kFeatureNames[i]) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

FeatureVector assemble_features(const SongAffect& lyrics, const AudioFeatures& audio) {
  FeatureVector v;
  v[Feature::Danceability] = audio.danceability;
  v[Feature::Loudness] = audio.loudness_db;
  v[Feature::Valence] = lyrics.valence;
  v[Feature::Bpm] = audio.bpm;
  v[Feature::Energy] = audio.energy;
  v[Feature::Mode] = audio.mode == Mode::Major ? 1.0 : 0.0;
  v[Feature::Arousal] = lyrics.arousal;
  return v;
}

nlohmann::json to_json(const FeatureVector& v) { return v.values; }

FeatureVector feature_vector_from_json(const nlohmann::json& j) {
  return FeatureVector{array_from_json(j, "feature vector")};
}

nlohmann::json to_json(const ScalingParams& p) { return {{"min", p.min}, {"max", p.max}}; }

ScalingParams scaling_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max")) {
    throw DataError("scaling params need min and max arrays");
  }
  ScalingParams p{array_from_json(j["min"], "scaling min"), array_from_json(j["max"], "scaling max")};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (p.min[i] > p.max[i]) throw DataError("scaling params require min <= max");
  }
  return p;
}

ScalingParams fit_scaling(std::span<const FeatureVector> training) {
  if (training.empty()) throw FitError("cannot fit scaling on an empty training set");
  ScalingParams p;
  p.min = training.front().values;
  p.max = training.front().values;
  for (const auto& v : training) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      p.min[i] = std::min(p.min[i], v[i]);
      p.max[i] = std::max(p.max[i], v[i]);
    }
  }
  return p;
}

FeatureVector scale(const FeatureVector& v, const ScalingParams& p) {
  FeatureVector out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (i == kModeIndex) {
      out[i] = std::clamp(v[i], 0.0, 1.0);
    } else if (p.max[i] > p.min[i]) {
      out[i] = std::clamp((v[i] - p.min[i]) / (p.max[i] - p.min[i]), 0.0, 1.0);
    } else {
      out[i] = 0.5;
    }
  }
  return out;
}

FeatureVector unscale(const FeatureVector& scaled, const ScalingParams& p) {
  FeatureVector out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (i == kModeIndex) {
      out[i] = scaled[i];
    } else if (p.max[i] > p.min[i]) {
      out[i] = p.min[i] + scaled[i] * (p.max[i] - p.min[i]);
    } else {
      out[i] = p.min[i];
    }
  }
  return out;
}

}  // namespace moodloom
