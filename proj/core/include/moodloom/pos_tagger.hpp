#pragma once

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>

#include "moodloom/lyric_parser.hpp"

namespace moodloom {

std::optional<PosTag> parse_pos_tag(std::string_view name);

/// Closed list of negation words. NEGATION is assigned exactly to these.
const std::set<std::string, std::less<>>& negation_words();
bool is_negation_word(std::string_view normalized);

/// Lexicon + suffix-rule tagger over the coarse tagset.
///
/// Per token: negation list, then the tag lexicon, then the closed-class
/// stoplist (OTHER), then suffix heuristics, then NOUN. Two contextual rules
/// then repair the commonest noun/verb confusions: a NOUN right after a
/// subject pronoun, modal or a negation becomes VERB, and a VERB right
/// after a determiner or possessive becomes NOUN.
class PosTagger {
 public:
  PosTagger() = default;
  explicit PosTagger(std::unordered_map<std::string, PosTag> lexicon);

  /// Reads `word<TAB>TAG` lines; '#' comments and blank lines skipped,
  /// first entry per word wins. NEGATION and UNTAGGED are rejected.
  static PosTagger load(const std::string& path);
  static PosTagger load(std::istream& in, const std::string& name);

  /// Context-free tag for one normalized word.
  PosTag tag_word(std::string_view normalized) const;

  void tag_sentence(Sentence& sentence) const;
  void tag_document(LyricDocument& document) const;

  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace moodloom
