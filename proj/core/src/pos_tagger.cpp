#include "moodloom/pos_tagger.hpp"

#include <cctype>
#include <fstream>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {
namespace {

using WordSet = std::set<std::string, std::less<>>;

const WordSet& closed_class_words() {
  static const WordSet words = {
      // determiners and quantifiers
      "a", "an", "the", "this", "that", "these", "those", "each", "every", "either", "some",
      "any", "all", "both", "few", "many", "much", "several", "such", "what", "which", "whose",
      // pronouns
      "i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself", "he", "him", "his",
      "himself", "she", "her", "hers", "herself", "it", "its", "itself", "we", "us", "our",
      "ours", "ourselves", "they", "them", "their", "theirs", "themselves", "who", "whom",
      "someone", "somebody", "something", "anyone", "anybody", "anything", "everyone",
      "everybody", "everything", "nobody", "nothing", "none", "ya", "y'all", "i'm", "you're",
      "we're", "they're", "he's", "she's", "it's", "i've", "you've", "we've", "they've", "i'll",
      "you'll", "we'll", "they'll", "i'd", "you'd", "we'd", "they'd",
      // prepositions and particles
      "about", "above", "across", "after", "against", "along", "among", "around", "as", "at",
      "before", "behind", "below", "beneath", "beside", "between", "beyond", "by", "despite",
      "during", "for", "from", "in", "into", "of", "off", "on", "onto", "over", "through",
      "throughout", "till", "to", "toward", "towards", "under", "until", "upon", "with",
      "within", "without", "'til", "til",
      // conjunctions
      "and", "but", "or", "so", "yet", "if", "because", "though", "although", "while",
      "unless", "whether", "than", "since", "cause", "'cause", "cuz",
      // modals
      "can", "could", "may", "might", "must", "shall", "should", "will", "would", "gonna",
      "wanna", "gotta",
      // interjections
      "oh", "ooh", "ah", "yeah", "hey", "la", "na", "whoa", "woah", "uh", "mm", "ohh",
  };
  return words;
}

const WordSet& verb_context_words() {
  static const WordSet words = {
      "i", "you", "we", "they", "he", "she", "will", "would", "can", "could", "should",
      "shall", "must", "might", "may", "i'll", "you'll", "we'll", "they'll", "gonna", "wanna",
  };
  return words;
}

const WordSet& noun_context_words() {
  static const WordSet words = {
      "the", "a", "an", "my", "your", "his", "her", "our", "their", "its", "every",
  };
  return words;
}

bool is_number(std::string_view w) {
  for (char c : w) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',') return false;
  }
  return !w.empty();
}

std::optional<PosTag> suffix_tag(std::string_view w) {
  struct Rule {
    std::string_view suffix;
    PosTag tag;
  };
  static constexpr Rule kRules[] = {
      {"ly", PosTag::Adv},    {"ous", PosTag::Adj},  {"ful", PosTag::Adj},
      {"less", PosTag::Adj},  {"ive", PosTag::Adj},  {"able", PosTag::Adj},
      {"ible", PosTag::Adj},  {"ish", PosTag::Adj},  {"ize", PosTag::Verb},
      {"ise", PosTag::Verb},  {"ate", PosTag::Verb}, {"ify", PosTag::Verb},
      {"ing", PosTag::Verb},  {"ed", PosTag::Verb},
  };
  for (const auto& rule : kRules) {
    if (w.size() >= rule.suffix.size() + 2 && text::ends_with(w, rule.suffix)) return rule.tag;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  const auto t = text::trim(name);
  if (t == "NOUN") return PosTag::Noun;
  if (t == "VERB") return PosTag::Verb;
  if (t == "ADJ") return PosTag::Adj;
  if (t == "ADV") return PosTag::Adv;
  if (t == "NEGATION") return PosTag::Negation;
  if (t == "OTHER") return PosTag::Other;
  if (t == "UNTAGGED") return PosTag::Untagged;
  return std::nullopt;
}

const std::set<std::string, std::less<>>& negation_words() {
  static const WordSet words = {
      "not", "never", "no", "cannot", "nor", "neither",
      "don't", "can't", "won't", "isn't", "wasn't", "ain't", "aren't", "weren't",
      "doesn't", "didn't", "couldn't", "wouldn't", "shouldn't", "hasn't", "haven't",
      "hadn't", "mustn't", "dont", "cant", "wont", "aint", "didnt", "doesnt", "isnt", "wasnt",
  };
  return words;
}

bool is_negation_word(std::string_view normalized) {
  return negation_words().contains(normalized);
}

PosTagger::PosTagger(std::unordered_map<std::string, PosTag> lexicon)
    : lexicon_(std::move(lexicon)) {}

PosTagger PosTagger::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return load(in, path);
}

PosTagger PosTagger::load(std::istream& in, const std::string& name) {
  std::unordered_map<std::string, PosTag> lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw LoadError(name, line_no, "expected word<TAB>TAG");
    const auto word = text::to_lower(text::trim(std::string_view(line).substr(0, tab)));
    const auto tag = parse_pos_tag(std::string_view(line).substr(tab + 1));
    if (word.empty()) throw LoadError(name, line_no, "empty word");
    if (!tag || *tag == PosTag::Negation || *tag == PosTag::Untagged) {
      throw LoadError(name, line_no, "invalid tag");
    }
    lexicon.try_emplace(word, *tag);
  }
  return PosTagger(std::move(lexicon));
}

PosTag PosTagger::tag_word(std::string_view w) const {
  if (is_negation_word(w)) return PosTag::Negation;
  if (auto it = lexicon_.find(std::string(w)); it != lexicon_.end()) return it->second;
  if (closed_class_words().contains(w) || is_number(w)) return PosTag::Other;
  if (auto tag = suffix_tag(w)) return *tag;
  return PosTag::Noun;
}

void PosTagger::tag_sentence(Sentence& sentence) const {
  auto& tokens = sentence.tokens;
  for (auto& tok : tokens) tok.pos = tag_word(tok.normalized);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto& prev = tokens[i - 1];
    auto& tok = tokens[i];
    if (tok.pos == PosTag::Noun &&
        (prev.pos == PosTag::Negation || verb_context_words().contains(prev.normalized))) {
      tok.pos = PosTag::Verb;
    } else if (tok.pos == PosTag::Verb && noun_context_words().contains(prev.normalized)) {
      tok.pos = PosTag::Noun;
    }
  }
}

void PosTagger::tag_document(LyricDocument& document) const {
  for (auto& seg : document.segments) {
    for (auto& sentence : seg.sentences) tag_sentence(sentence);
  }
}

}  // namespace moodloom
