#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moodloom {

/// Coarse part-of-speech tagset. Only the distinctions the association
/// rules need are kept.
enum class PosTag { Noun, Verb, Adj, Adv, Negation, Other, Untagged };

std::string_view to_string(PosTag tag);

struct Token {
  std::string text;        // as written, punctuation stripped
  std::string normalized;  // lowercase
  PosTag pos = PosTag::Untagged;
};

/// One lyric line.
struct Sentence {
  std::string text;
  std::vector<Token> tokens;
};

enum class SegmentKind { Verse, Chorus };

std::string_view to_string(SegmentKind kind);

struct Segment {
  SegmentKind kind = SegmentKind::Verse;
  std::vector<std::string> lines;  // raw non-blank, non-marker lines
  std::vector<Sentence> sentences;
  double weight = 1.0;
};

struct SegmentationConfig {
  double chorus_weight = 2.0;
  double verse_weight = 1.0;
};

struct LyricDocument {
  std::string source_id;
  std::vector<Segment> segments;

  std::size_t sentence_count() const;
};

/// Whitespace split, then leading/trailing punctuation stripped per token.
/// Internal apostrophes survive ("don't"); curly apostrophes become ASCII.
std::vector<Token> tokenize(std::string_view line);

/// One Sentence per non-blank line that yields at least one token.
std::vector<Sentence> split_sentences(std::span<const std::string> lines);

/// Splits on blank lines into verse/chorus blocks. A block is a chorus when
/// it follows a `[chorus]`/`(chorus)` marker or its normalized lines repeat
/// another block exactly. Throws EmptyLyricsError when nothing but blank or
/// marker lines remain.
std::vector<Segment> segment_lyrics(std::string_view text, const SegmentationConfig& config = {});

/// segment_lyrics plus a source id; throws EmptyLyricsError if no line
/// produced a token.
LyricDocument parse_lyrics(std::string_view text, const SegmentationConfig& config = {},
                           std::string source_id = {});

}  // namespace moodloom
