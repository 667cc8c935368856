#include "moodloom/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "moodloom/error.hpp"
#include "moodloom/random.hpp"

namespace moodloom {
namespace {

// Normalized centers: danceability, loudness, valence, bpm, energy,
// P(major), arousal.
constexpr std::array<std::array<double, kFeatureCount>, kMoodClassCount> kCenters = {{
    {0.35, 0.25, 0.60, 0.25, 0.20, 0.60, 0.20},  // Calm
    {0.55, 0.85, 0.55, 0.80, 0.90, 0.60, 0.85},  // Energetic
    {0.90, 0.75, 0.70, 0.65, 0.75, 0.70, 0.70},  // Dance
    {0.70, 0.60, 0.90, 0.60, 0.65, 0.90, 0.65},  // Happy
    {0.30, 0.35, 0.15, 0.35, 0.30, 0.20, 0.35},  // Sad
    {0.50, 0.45, 0.80, 0.40, 0.40, 0.70, 0.45},  // Romantic
    {0.75, 0.50, 0.65, 0.45, 0.50, 0.40, 0.60},  // Seductive
    {0.50, 0.55, 0.75, 0.50, 0.55, 0.80, 0.50},  // Hopeful
    {0.45, 0.95, 0.10, 0.75, 0.95, 0.30, 0.95},  // Angry
}};

// Songs per class in a 795-song social-tag dataset.
constexpr std::array<double, kMoodClassCount> kClassShare = {182, 103, 106, 82, 223,
                                                             238, 139, 81,  133};

constexpr double kLoudnessLow = -30.0;
constexpr double kLoudnessRange = 27.0;
constexpr double kBpmLow = 60.0;
constexpr double kBpmRange = 120.0;

MoodClass draw_class(Rng& rng) {
  double total = 0.0;
  for (double s : kClassShare) total += s;
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < kMoodClassCount; ++i) {
    if (u < kClassShare[i]) return kAllMoodClasses[i];
    u -= kClassShare[i];
  }
  return kAllMoodClasses.back();
}

std::string_view first_tag(MoodClass c) {
  for (const auto& [tag, cls] : mood_tag_table()) {
    if (cls == c) return tag;
  }
  return {};
}

}  // namespace

std::vector<SongRecord> generate_synthetic_dataset(const SyntheticConfig& config) {
  if (config.songs == 0) throw ConfigError("synthetic dataset needs at least one song");
  if (!(config.spread >= 0.0)) throw ConfigError("spread must be non-negative");

  Rng rng(config.seed);
  std::vector<SongRecord> records;
  records.reserve(config.songs);

  for (std::size_t i = 0; i < config.songs; ++i) {
    const MoodClass primary = draw_class(rng);
    MoodSet classes{primary};
    if (rng.uniform() < config.secondary_label_rate) {
      std::vector<MoodClass> compatible;
      for (auto c : kAllMoodClasses) {
        if (c != primary && !conflicts(primary, c, true)) compatible.push_back(c);
      }
      classes.insert(compatible[rng.below(compatible.size())]);
    }

    const auto& center = kCenters[static_cast<std::size_t>(primary)];
    std::array<double, kFeatureCount> x{};
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (f == static_cast<std::size_t>(Feature::Mode)) {
        x[f] = rng.uniform() < center[f] ? 1.0 : 0.0;
      } else {
        x[f] = std::clamp(rng.normal(center[f], config.spread), 0.0, 1.0);
      }
    }

    AudioFeatures audio;
    audio.danceability = x[static_cast<std::size_t>(Feature::Danceability)];
    audio.loudness_db = kLoudnessLow + kLoudnessRange * x[static_cast<std::size_t>(Feature::Loudness)];
    audio.bpm = kBpmLow + kBpmRange * x[static_cast<std::size_t>(Feature::Bpm)];
    audio.energy = x[static_cast<std::size_t>(Feature::Energy)];
    audio.mode = x[static_cast<std::size_t>(Feature::Mode)] > 0.5 ? Mode::Major : Mode::Minor;
    const SongAffect lyrics{10.0 * x[static_cast<std::size_t>(Feature::Valence)],
                            10.0 * x[static_cast<std::size_t>(Feature::Arousal)]};

    char title[32];
    std::snprintf(title, sizeof title, "song-%04zu", i + 1);
    SongRecord r;
    r.artist = "synthetic";
    r.title = title;
    for (auto c : classes.to_vector()) r.tags.push_back({std::string(first_tag(c)), 100});
    r.classes = classes;
    r.audio = audio;
    r.vector = assemble_features(lyrics, audio);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace moodloom
