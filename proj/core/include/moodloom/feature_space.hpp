#pragma once

#include <array>
#include <span>
#include <string_view>

#include <nlohmann/json.hpp>

#include "moodloom/affect_engine.hpp"

namespace moodloom {

enum class Mode { Minor = 0, Major = 1 };

/// Audio descriptors ingested per song; computing them is out of scope.
struct AudioFeatures {
  double bpm = 120.0;
  Mode mode = Mode::Major;
  double loudness_db = -10.0;
  double danceability = 0.5;
  double energy = 0.5;
};

/// Throws DataError unless bpm > 0 and danceability, energy lie in [0, 1].
void validate(const AudioFeatures& audio);

/// `{bpm, mode: "major"|"minor", loudness_db, danceability, energy}`
AudioFeatures audio_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AudioFeatures& audio);

inline constexpr std::size_t kFeatureCount = 7;

/// Component order of every FeatureVector.
enum class Feature : std::size_t {
  Danceability = 0,
  Loudness,
  Valence,
  Bpm,
  Energy,
  Mode,
  Arousal,
};

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "danceability", "loudness", "valence", "bpm", "energy", "mode", "arousal"};

std::optional<Feature> parse_feature(std::string_view name);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector assemble_features(const SongAffect& lyrics, const AudioFeatures& audio);

nlohmann::json to_json(const FeatureVector& v);
FeatureVector feature_vector_from_json(const nlohmann::json& j);

/// Per-feature training extremes for min-max scaling.
struct ScalingParams {
  std::array<double, kFeatureCount> min{};
  std::array<double, kFeatureCount> max{};
};

nlohmann::json to_json(const ScalingParams& p);
ScalingParams scaling_from_json(const nlohmann::json& j);

/// Throws FitError on an empty training set.
ScalingParams fit_scaling(std::span<const FeatureVector> training);

/// (e - min) / (max - min) clamped to [0, 1]; a constant feature maps to 0.5.
/// Mode is already binary and passes through unchanged.
FeatureVector scale(const FeatureVector& v, const ScalingParams& p);

/// Inverse of scale for in-range values.
FeatureVector unscale(const FeatureVector& scaled, const ScalingParams& p);

}  // namespace moodloom
