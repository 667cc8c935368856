#include "moodloom/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {
namespace {

std::optional<double> parse_double(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string unquote(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return in;
}

}  // namespace

std::string_view to_string(LexiconSource source) {
  switch (source) {
    case LexiconSource::Anew: return "ANEW";
    case LexiconSource::Extended: return "EXTENDED";
    case LexiconSource::SynonymExpanded: return "SYNONYM_EXPANDED";
  }
  return "ANEW";
}

std::optional<LexiconSource> parse_lexicon_source(std::string_view name) {
  const std::string upper = [&] {
    std::string s(text::trim(name));
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
  }();
  if (upper == "ANEW") return LexiconSource::Anew;
  if (upper == "EXTENDED") return LexiconSource::Extended;
  if (upper == "SYNONYM_EXPANDED") return LexiconSource::SynonymExpanded;
  return std::nullopt;
}

double rescale_to_unified(double value, NativeScale scale) {
  if (!(scale.high > scale.low)) {
    throw LoadError("native scale must satisfy low < high");
  }
  if (value < scale.low || value > scale.high) {
    std::ostringstream msg;
    msg << "value " << value << " outside native scale [" << scale.low << ", " << scale.high << "]";
    throw LoadError(msg.str());
  }
  const double unified = (value - scale.low) / (scale.high - scale.low) * kAffectMax;
  return std::clamp(unified, kAffectMin, kAffectMax);
}

bool Lexicon::insert(LexiconEntry entry) {
  auto key = entry.word;
  return entries_.try_emplace(std::move(key), std::move(entry)).second;
}

const LexiconEntry* Lexicon::find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<AffectScore> Lexicon::lookup(std::string_view token) const {
  const std::string folded = text::to_lower(text::trim(token));
  if (folded.empty()) return std::nullopt;
  if (const auto* hit = find(folded)) return hit->score;
  for (std::string_view suffix : {"s", "ing", "ed"}) {
    if (folded.size() > suffix.size() && text::ends_with(folded, suffix)) {
      std::string_view stem(folded.data(), folded.size() - suffix.size());
      if (const auto* hit = find(stem)) return hit->score;
    }
  }
  return std::nullopt;
}

Lexicon load_lexicon(const std::string& path, NativeScale scale, LexiconSource source) {
  auto in = open_or_throw(path);
  return load_lexicon(in, scale, source, path);
}

Lexicon load_lexicon(std::istream& in, NativeScale scale, LexiconSource source,
                     const std::string& name) {
  Lexicon lexicon;
  lexicon.add_provenance(name);

  std::string line;
  std::size_t line_no = 0;
  std::array<std::size_t, 3> col{};  // word, valence, arousal
  std::optional<std::size_t> source_col;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

    auto fields = text::split(line, ',');
    if (!have_header) {
      std::array<bool, 3> seen{};
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name_lc = text::to_lower(unquote(fields[i]));
        if (name_lc == "word") { col[0] = i; seen[0] = true; }
        else if (name_lc == "valence") { col[1] = i; seen[1] = true; }
        else if (name_lc == "arousal") { col[2] = i; seen[2] = true; }
        else if (name_lc == "source") { source_col = i; }
      }
      if (!seen[0] || !seen[1] || !seen[2]) {
        throw LoadError(name, line_no, "header must name columns word, valence, arousal");
      }
      have_header = true;
      continue;
    }

    const std::size_t needed = std::max({col[0], col[1], col[2]}) + 1;
    if (fields.size() < needed) throw LoadError(name, line_no, "missing column");

    const std::string word = text::to_lower(unquote(fields[col[0]]));
    if (word.empty()) throw LoadError(name, line_no, "empty word");
    const auto valence = parse_double(fields[col[1]]);
    const auto arousal = parse_double(fields[col[2]]);
    if (!valence || !arousal) throw LoadError(name, line_no, "non-numeric score");

    LexiconEntry entry{word, {}, source};
    try {
      entry.score.valence = rescale_to_unified(*valence, scale);
      entry.score.arousal = rescale_to_unified(*arousal, scale);
    } catch (const LoadError& e) {
      throw LoadError(name, line_no, e.what());
    }
    if (source_col && *source_col < fields.size()) {
      auto parsed = parse_lexicon_source(unquote(fields[*source_col]));
      if (!parsed) throw LoadError(name, line_no, "unknown source '" + fields[*source_col] + "'");
      entry.source = *parsed;
    }
    lexicon.insert(std::move(entry));
  }
  if (!have_header) throw LoadError(name, line_no, "missing header line");
  return lexicon;
}

Lexicon merge(std::span<const Lexicon> lexicons) {
  Lexicon merged;
  for (const auto& lex : lexicons) {
    for (const auto& [word, entry] : lex.entries()) merged.insert(entry);
    for (const auto& p : lex.provenance()) merged.add_provenance(p);
  }
  return merged;
}

SynonymMap load_synonym_map(const std::string& path) {
  auto in = open_or_throw(path);
  return load_synonym_map(in, path);
}

SynonymMap load_synonym_map(std::istream& in, const std::string& name) {
  SynonymMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw LoadError(name, line_no, "expected word<TAB>synonyms");
    const auto word = text::to_lower(text::trim(std::string_view(line).substr(0, tab)));
    if (word.empty()) throw LoadError(name, line_no, "empty word");
    auto& syns = map[word];
    for (const auto& syn : text::split(std::string_view(line).substr(tab + 1), ',')) {
      auto s = text::to_lower(text::trim(syn));
      if (!s.empty()) syns.insert(std::move(s));
    }
  }
  return map;
}

Lexicon expand_with_synonyms(const Lexicon& base, const SynonymMap& synonyms) {
  struct Accum {
    double valence = 0.0;
    double arousal = 0.0;
    int count = 0;
  };
  std::map<std::string, Accum, std::less<>> pending;
  for (const auto& [word, syns] : synonyms) {
    const auto* origin = base.find(word);
    if (origin == nullptr) continue;
    for (const auto& syn : syns) {
      if (syn == word || base.contains(syn)) continue;
      auto& acc = pending[syn];
      acc.valence += origin->score.valence;
      acc.arousal += origin->score.arousal;
      ++acc.count;
    }
  }

  Lexicon expanded = base;
  for (const auto& [syn, acc] : pending) {
    const AffectScore score{std::clamp(acc.valence / acc.count, kAffectMin, kAffectMax),
                            std::clamp(acc.arousal / acc.count, kAffectMin, kAffectMax)};
    expanded.insert({syn, score, LexiconSource::SynonymExpanded});
  }
  return expanded;
}

void write_lexicon_csv(std::ostream& out, const Lexicon& lexicon) {
  out << "word,valence,arousal,source\n";
  std::ostringstream row;
  row << std::setprecision(10);
  for (const auto& [word, entry] : lexicon.entries()) {
    row.str({});
    row << word << ',' << entry.score.valence << ',' << entry.score.arousal << ','
        << to_string(entry.source) << '\n';
    out << row.str();
  }
}

}  // namespace moodloom
