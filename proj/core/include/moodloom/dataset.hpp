#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "moodloom/feature_space.hpp"
#include "moodloom/mood.hpp"

namespace moodloom {

/// A social tag and its relative weight (0..100 on the tag service).
struct Tag {
  std::string name;
  int weight = 0;

  friend bool operator==(const Tag&, const Tag&) = default;
};

inline constexpr int kDefaultMinTagWeight = 10;

/// Every mood tag and the class it indicates.
std::span<const std::pair<std::string_view, MoodClass>> mood_tag_table();

/// Drops tags below `min_weight`, then maps the rest through the mood tag
/// table (case-insensitive, exact). Unknown tags are ignored.
MoodSet map_tags_to_classes(std::span<const Tag> tags, int min_weight = kDefaultMinTagWeight);

/// Classes that contradict an assigned class.
MoodSet conflict_row(MoodClass assigned);

/// Whether a song assigned `assigned` but tagged `tagged` counts as a
/// misclassification. The relation is directional unless `symmetrize`.
bool conflicts(MoodClass assigned, MoodClass tagged, bool symmetrize = false);

struct SongRecord {
  std::string artist;
  std::string title;
  std::vector<Tag> tags;
  std::optional<AudioFeatures> audio;
  std::string lyrics;  // path to the lyric text file
  MoodSet classes;
  std::optional<FeatureVector> vector;  // unscaled

  /// "artist - title"
  std::string id() const;
};

/// Case- and whitespace-insensitive identity used for de-duplication.
std::string record_key(std::string_view artist, std::string_view title);

nlohmann::json to_json(const SongRecord& record);
SongRecord record_from_json(const nlohmann::json& j);

/// JSON Lines, one record per non-blank line.
std::vector<SongRecord> read_records(std::istream& in, const std::string& name);
std::vector<SongRecord> read_records(const std::string& path);
void write_records(std::ostream& out, std::span<const SongRecord> records);

/// Keeps the first occurrence of each (artist, title); ids of dropped
/// duplicates are appended to `dropped` when given.
std::vector<SongRecord> dedupe_records(std::vector<SongRecord> records,
                                       std::vector<std::string>* dropped = nullptr);

/// Throws DataError on a repeated (artist, title).
void require_unique(std::span<const SongRecord> records);

struct Fold {
  std::size_t index = 1;  // 1-based
  std::vector<SongRecord> records;
};

/// Seeded greedy stratification: after a shuffle, each song goes to the fold
/// holding the fewest songs of its rarest class (ties: fewer songs overall,
/// then lower index). Records keep their input order within a fold. Throws
/// PartitionError when there are fewer records than folds or a record has
/// no class.
std::vector<Fold> stratified_partition(std::span<const SongRecord> records, std::size_t folds,
                                       std::uint64_t seed);

/// Song id -> class set.
using SongClasses = std::map<std::string, MoodSet>;

/// Correct unless some assigned class conflicts with some tagged class.
bool is_correct(MoodSet assigned, MoodSet truth, bool symmetrize = false);

struct SetEvaluation {
  std::string name;
  std::size_t total = 0;
  std::size_t incorrect = 0;
  std::vector<std::string> excluded;  // songs with no tag-derived class

  std::size_t correct() const { return total - incorrect; }
  double accuracy_percent() const;
};

/// Scores predictions against tag-derived truth. Songs with an empty truth
/// set are excluded and listed; a truth song without a prediction is a
/// DataError.
SetEvaluation evaluate(const SongClasses& predictions, const SongClasses& truth,
                       bool symmetrize = false, std::string name = "All");

struct AccuracyReport {
  std::vector<SetEvaluation> sets;

  /// Sum over all sets, named "All".
  SetEvaluation total() const;

  nlohmann::json to_json() const;
  /// Aligned columns: Set, Total, Incorrect, Correct, Accuracy (%).
  std::string format_table() const;
};

}  // namespace moodloom
