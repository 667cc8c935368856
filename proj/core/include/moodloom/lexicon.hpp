#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moodloom {

/// Valence/arousal on the unified 0..10 scale. 5 is neutral valence.
struct AffectScore {
  double valence = 5.0;
  double arousal = 5.0;

  friend bool operator==(const AffectScore&, const AffectScore&) = default;
};

inline constexpr double kAffectMin = 0.0;
inline constexpr double kAffectMax = 10.0;

enum class LexiconSource { Anew, Extended, SynonymExpanded };

std::string_view to_string(LexiconSource source);
std::optional<LexiconSource> parse_lexicon_source(std::string_view name);

struct LexiconEntry {
  std::string word;
  AffectScore score;
  LexiconSource source = LexiconSource::Anew;
};

/// Native rating range of a lexicon file, e.g. {1, 9} for ANEW-style norms.
struct NativeScale {
  double low = 0.0;
  double high = 10.0;
};

/// Maps a native rating onto 0..10. Throws LoadError when `value` lies
/// outside the scale or the scale is empty.
double rescale_to_unified(double value, NativeScale scale);

/// Word -> affect dictionary. Immutable once built; reads are thread-safe.
class Lexicon {
 public:
  Lexicon() = default;

  /// Inserts unless the word is already present. Returns true on insertion.
  bool insert(LexiconEntry entry);

  const LexiconEntry* find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }

  /// Case-folded exact match, then the same word with a trailing "s",
  /// "ing", or "ed" removed (first hit wins).
  std::optional<AffectScore> lookup(std::string_view token) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entries in ascending word order.
  const std::map<std::string, LexiconEntry, std::less<>>& entries() const { return entries_; }

  const std::vector<std::string>& provenance() const { return provenance_; }
  void add_provenance(std::string source) { provenance_.push_back(std::move(source)); }

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
  std::vector<std::string> provenance_;
};

/// Reads a header-bearing CSV with at least the columns word, valence, arousal
/// (any order, extra columns ignored). An optional `source` column overrides
/// `source` per row. Duplicate words keep the first row.
Lexicon load_lexicon(const std::string& path, NativeScale scale, LexiconSource source);
Lexicon load_lexicon(std::istream& in, NativeScale scale, LexiconSource source,
                     const std::string& name);

/// Earlier lexicons win on collisions.
Lexicon merge(std::span<const Lexicon> lexicons);

using SynonymMap = std::map<std::string, std::set<std::string>>;

/// Lines of `word<TAB>syn1,syn2,...`. Blank lines and '#' comments skipped.
SynonymMap load_synonym_map(const std::string& path);
SynonymMap load_synonym_map(std::istream& in, const std::string& name);

/// Gives each synonym not already in `base` the score of the base word it
/// came from; a synonym reached from several base words gets the mean.
Lexicon expand_with_synonyms(const Lexicon& base, const SynonymMap& synonyms);

/// CSV with header `word,valence,arousal,source`, 0..10 scale.
void write_lexicon_csv(std::ostream& out, const Lexicon& lexicon);

}  // namespace moodloom
