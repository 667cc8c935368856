#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "moodloom/error.hpp"
#include "moodloom/lexicon.hpp"
#include "moodloom/text.hpp"

namespace moodloom::cli {
namespace {

NativeScale to_scale(const std::vector<double>& v, const char* flag) {
  if (v.size() != 2) throw ConfigError(std::string(flag) + " takes LOW,HIGH");
  return {v[0], v[1]};
}

nlohmann::json score_json(const std::optional<AffectScore>& s, const char* axis) {
  if (!s) return nullptr;
  return std::string_view(axis) == "valence" ? s->valence : s->arousal;
}

}  // namespace

int lexicon_build(const LexiconBuildOptions& o, std::ostream& out, std::ostream&) {
  const auto data = default_data_dir();
  const auto core_path = o.core.empty() ? data + "/lexicon/core_affect.csv" : o.core;
  const auto ext_path = o.extended.empty() ? data + "/lexicon/extended_affect.csv" : o.extended;
  const auto syn_path = o.synonyms.empty() ? data + "/lexicon/synonyms.tsv" : o.synonyms;

  const Lexicon parts[] = {
      load_lexicon(core_path, to_scale(o.core_scale, "--core-scale"), LexiconSource::Anew),
      load_lexicon(ext_path, to_scale(o.extended_scale, "--extended-scale"), LexiconSource::Extended),
  };
  const auto merged = merge(parts);
  const auto expanded = expand_with_synonyms(merged, load_synonym_map(syn_path));

  std::ostringstream csv;
  write_lexicon_csv(csv, expanded);
  write_output(o.out, csv.str(), out);

  if (!o.out.empty() && o.out != "-") {
    std::map<std::string, std::size_t> by_source;
    for (const auto& [word, entry] : expanded.entries()) ++by_source[std::string(to_string(entry.source))];
    nlohmann::json summary = {{"entries", expanded.size()}, {"sources", by_source}, {"out", o.out}};
    out << summary.dump() << "\n";
  }
  return 0;
}

int analyze(const RunConfig& rc, const AnalyzeOptions& o, std::ostream& out, std::ostream&) {
  const auto analyzer = rc.load_analyzer();
  const auto lyrics = text::read_file(o.lyrics);
  const auto analysis = analyzer.analyze_text(lyrics, o.lyrics);

  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : analysis.sentences) {
    sentences.push_back({{"text", s.text},
                         {"valence", score_json(s.score, "valence")},
                         {"arousal", score_json(s.score, "arousal")},
                         {"weight", s.weight}});
  }
  nlohmann::json result = {{"valence", analysis.song.valence},
                           {"arousal", analysis.song.arousal},
                           {"sentences", sentences}};
  out << result.dump(2) << "\n";
  return 0;
}

}  // namespace moodloom::cli
