#include "moodloom/lyric_parser.hpp"

#include <cctype>
#include <optional>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {
namespace {

bool is_strippable(unsigned char c) { return std::ispunct(c) != 0; }

std::string normalize_apostrophes(std::string_view s) {
  static constexpr std::string_view kCurly = "\xE2\x80\x99";  // U+2019
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s.substr(i, kCurly.size()) == kCurly) {
      out.push_back('\'');
      i += kCurly.size();
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// Section header lines such as "[Chorus]", "(Verse 2)" or "[Bridge:]".
// Returns the section kind the header announces.
std::optional<SegmentKind> parse_marker(std::string_view line) {
  line = text::trim(line);
  if (line.size() < 3) return std::nullopt;
  const char open = line.front();
  const char close = line.back();
  if (!((open == '[' && close == ']') || (open == '(' && close == ')'))) return std::nullopt;

  const std::string inner = text::to_lower(text::trim(line.substr(1, line.size() - 2)));
  if (inner.starts_with("chorus")) return SegmentKind::Chorus;
  for (std::string_view section :
       {"verse", "bridge", "intro", "outro", "pre-chorus", "hook", "interlude", "refrain"}) {
    if (inner.starts_with(section)) return SegmentKind::Verse;
  }
  return std::nullopt;
}

std::string normalized_line(std::string_view line) {
  std::string out;
  for (const auto& tok : tokenize(line)) {
    if (!out.empty()) out.push_back(' ');
    out += tok.normalized;
  }
  return out;
}

struct Block {
  std::vector<std::string> lines;
  bool marked_chorus = false;
};

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Adj: return "ADJ";
    case PosTag::Adv: return "ADV";
    case PosTag::Negation: return "NEGATION";
    case PosTag::Other: return "OTHER";
    case PosTag::Untagged: return "UNTAGGED";
  }
  return "UNTAGGED";
}

std::string_view to_string(SegmentKind kind) {
  return kind == SegmentKind::Chorus ? "CHORUS" : "VERSE";
}

std::size_t LyricDocument::sentence_count() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.sentences.size();
  return n;
}

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  const std::string clean = normalize_apostrophes(line);
  std::string_view rest(clean);
  while (!rest.empty()) {
    std::size_t start = 0;
    while (start < rest.size() && std::isspace(static_cast<unsigned char>(rest[start]))) ++start;
    std::size_t end = start;
    while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
    std::string_view word = rest.substr(start, end - start);
    rest.remove_prefix(end);

    while (!word.empty() && is_strippable(static_cast<unsigned char>(word.front()))) word.remove_prefix(1);
    while (!word.empty() && is_strippable(static_cast<unsigned char>(word.back()))) word.remove_suffix(1);
    if (word.empty()) continue;
    tokens.push_back({std::string(word), text::to_lower(word), PosTag::Untagged});
  }
  return tokens;
}

std::vector<Sentence> split_sentences(std::span<const std::string> lines) {
  std::vector<Sentence> sentences;
  for (const auto& line : lines) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    sentences.push_back({std::string(text::trim(line)), std::move(tokens)});
  }
  return sentences;
}

std::vector<Segment> segment_lyrics(std::string_view lyrics, const SegmentationConfig& config) {
  std::vector<Block> blocks;
  Block current;
  std::optional<SegmentKind> pending_marker;

  auto close_block = [&] {
    if (current.lines.empty()) return;
    blocks.push_back(std::move(current));
    current = Block{};
  };

  for (const auto& line : text::split_lines(lyrics)) {
    if (text::trim(line).empty()) {
      close_block();
      continue;
    }
    if (auto marker = parse_marker(line)) {
      close_block();
      pending_marker = marker;
      continue;
    }
    if (current.lines.empty() && pending_marker) {
      current.marked_chorus = *pending_marker == SegmentKind::Chorus;
      pending_marker.reset();
    }
    current.lines.push_back(line);
  }
  close_block();

  if (blocks.empty()) throw EmptyLyricsError("lyrics contain no text lines");

  std::vector<std::vector<std::string>> normalized;
  normalized.reserve(blocks.size());
  for (const auto& block : blocks) {
    std::vector<std::string> norm;
    for (const auto& line : block.lines) norm.push_back(normalized_line(line));
    normalized.push_back(std::move(norm));
  }

  std::vector<Segment> segments;
  segments.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    bool repeated = false;
    for (std::size_t j = 0; j < blocks.size() && !repeated; ++j) {
      repeated = j != i && normalized[j] == normalized[i];
    }
    Segment seg;
    seg.kind = (blocks[i].marked_chorus || repeated) ? SegmentKind::Chorus : SegmentKind::Verse;
    seg.weight = seg.kind == SegmentKind::Chorus ? config.chorus_weight : config.verse_weight;
    seg.sentences = split_sentences(blocks[i].lines);
    seg.lines = std::move(blocks[i].lines);
    segments.push_back(std::move(seg));
  }
  return segments;
}

LyricDocument parse_lyrics(std::string_view lyrics, const SegmentationConfig& config,
                           std::string source_id) {
  if (!(config.chorus_weight > 0.0) || !(config.verse_weight > 0.0)) {
    throw ConfigError("segment weights must be positive");
  }
  LyricDocument doc{std::move(source_id), segment_lyrics(lyrics, config)};
  if (doc.sentence_count() == 0) throw EmptyLyricsError("lyrics contain no words");
  return doc;
}

}  // namespace moodloom
