#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moodloom/lexicon.hpp"
#include "moodloom/lyric_parser.hpp"
#include "moodloom/pos_tagger.hpp"

namespace moodloom {

struct AffectConfig {
  /// Share of a sentence's score taken by its verbs when any are scored.
  double verb_dominance = 0.6;
  /// How many tokens after a negation word it may reach.
  std::size_t negation_window = 4;
};

/// A token after lexicon lookup and negation.
struct ScoredToken {
  std::string word;
  PosTag pos = PosTag::Untagged;
  std::optional<AffectScore> score;  // valence already inverted when negated
  bool negated = false;
};

enum class UnitKind { NounPhrase, Verb, FreeWord };

std::string_view to_string(UnitKind kind);

struct AffectUnit {
  UnitKind kind = UnitKind::FreeWord;
  std::optional<AffectScore> score;
  bool negated = false;
  std::string text;
};

struct SentenceAffect {
  std::string text;
  std::optional<AffectScore> score;  // absent: no scored word in the line
  double weight = 1.0;
};

struct SongAffect {
  double valence = 5.0;
  double arousal = 5.0;
};

struct SongAnalysis {
  SongAffect song;
  std::vector<SentenceAffect> sentences;
};

/// Valence reflected around the scale midpoint; arousal untouched.
AffectScore negate(AffectScore score);

/// Looks up every token of a tagged sentence.
std::vector<ScoredToken> score_tokens(const Sentence& sentence, const Lexicon& lexicon);

/// Each NEGATION token toggles the nearest VERB or ADJ within the next
/// `window` tokens, then is dropped. A token negated an odd number of times
/// has its valence reflected.
std::vector<ScoredToken> apply_negation(std::vector<ScoredToken> tokens, std::size_t window = 4);

/// Adjective association rules, applied in order:
///  1. adjacent adjectives merge into one (mean score);
///  2. an adjective right before a noun binds to it;
///  3. otherwise to the closest preceding unbound noun;
///  4. otherwise to the closest following unbound noun, the closer adjective
///     winning a contested noun and the loser staying free.
/// A bound pair becomes one NOUN_PHRASE scored by the mean of its members.
/// Verbs become VERB units, other scored tokens FREE_WORD units.
std::vector<AffectUnit> bind_adjectives(std::span<const ScoredToken> tokens);

/// Mean of the non-verb units, pulled toward the mean verb score by
/// `verb_dominance` when any verb is scored.
std::optional<AffectScore> sentence_affect(std::span<const AffectUnit> units,
                                           double verb_dominance = 0.6);

/// Weighted mean over scored sentences. Throws AffectUnavailableError if
/// none is scored.
SongAffect song_affect(std::span<const SentenceAffect> sentences);

/// Tag -> negate -> bind -> score pipeline over lyric documents.
class AffectEngine {
 public:
  AffectEngine(const Lexicon& lexicon, const PosTagger& tagger, AffectConfig config = {});

  /// Sentence must already be tagged.
  std::optional<AffectScore> score_sentence(const Sentence& sentence) const;

  /// Tags a copy of the document and scores every sentence.
  SongAnalysis analyze(const LyricDocument& document) const;

  const AffectConfig& config() const { return config_; }

 private:
  const Lexicon* lexicon_;
  const PosTagger* tagger_;
  AffectConfig config_;
};

}  // namespace moodloom
