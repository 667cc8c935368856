#pragma once

#include <cstdint>
#include <vector>

#include "moodloom/dataset.hpp"

namespace moodloom {

/// Songs drawn from nine class-conditioned Gaussian clusters in the feature
/// space. Cluster centers follow the valence/arousal layout of the classes
/// (e.g. Angry: loud, energetic, negative), class sizes follow the tag-derived
/// class distribution of a real social-tag dataset.
struct SyntheticConfig {
  std::size_t songs = 400;
  /// Per-feature standard deviation, as a fraction of the feature's range.
  double spread = 0.12;
  /// Probability that a song also carries a second, non-conflicting class.
  double secondary_label_rate = 0.3;
  std::uint64_t seed = 1;
};

/// Records carry tags, classes, audio features and an unscaled vector; ids
/// are "synthetic - song-NNNN".
std::vector<SongRecord> generate_synthetic_dataset(const SyntheticConfig& config);

}  // namespace moodloom
