#include "moodloom/affect_engine.hpp"

#include <algorithm>

#include "moodloom/error.hpp"

namespace moodloom {
namespace {

struct Accum {
  double valence = 0.0;
  double arousal = 0.0;
  int count = 0;

  void add(const AffectScore& s) {
    valence += s.valence;
    arousal += s.arousal;
    ++count;
  }
  std::optional<AffectScore> mean() const {
    if (count == 0) return std::nullopt;
    return AffectScore{valence / count, arousal / count};
  }
};

std::optional<AffectScore> mean_of(std::optional<AffectScore> a, std::optional<AffectScore> b) {
  Accum acc;
  if (a) acc.add(*a);
  if (b) acc.add(*b);
  return acc.mean();
}

AffectScore clamp_score(AffectScore s) {
  return {std::clamp(s.valence, kAffectMin, kAffectMax), std::clamp(s.arousal, kAffectMin, kAffectMax)};
}

struct AdjGroup {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  std::optional<AffectScore> score;
  bool negated = false;
  std::optional<std::size_t> noun;
  bool emitted = false;
};

}  // namespace

std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::NounPhrase: return "NOUN_PHRASE";
    case UnitKind::Verb: return "VERB";
    case UnitKind::FreeWord: return "FREE_WORD";
  }
  return "FREE_WORD";
}

AffectScore negate(AffectScore score) {
  return {kAffectMax - score.valence, score.arousal};
}

std::vector<ScoredToken> score_tokens(const Sentence& sentence, const Lexicon& lexicon) {
  std::vector<ScoredToken> out;
  out.reserve(sentence.tokens.size());
  for (const auto& tok : sentence.tokens) {
    out.push_back({tok.normalized, tok.pos, lexicon.lookup(tok.normalized), false});
  }
  return out;
}

std::vector<ScoredToken> apply_negation(std::vector<ScoredToken> tokens, std::size_t window) {
  std::vector<bool> flips(tokens.size(), false);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos != PosTag::Negation) continue;
    const std::size_t last = std::min(tokens.size(), i + 1 + window);
    for (std::size_t j = i + 1; j < last; ++j) {
      if (tokens[j].pos == PosTag::Verb || tokens[j].pos == PosTag::Adj) {
        flips[j] = !flips[j];
        break;
      }
    }
  }

  std::vector<ScoredToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].pos == PosTag::Negation) continue;
    auto tok = std::move(tokens[i]);
    if (flips[i]) {
      tok.negated = true;
      if (tok.score) tok.score = negate(*tok.score);
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::vector<AffectUnit> bind_adjectives(std::span<const ScoredToken> tokens) {
  const std::size_t n = tokens.size();
  std::vector<AdjGroup> groups;
  std::vector<std::optional<std::size_t>> group_of(n);

  // Rule 1: runs of adjectives act as one.
  for (std::size_t i = 0; i < n;) {
    if (tokens[i].pos != PosTag::Adj) {
      ++i;
      continue;
    }
    AdjGroup g;
    g.start = i;
    Accum acc;
    while (i < n && tokens[i].pos == PosTag::Adj) {
      if (tokens[i].score) acc.add(*tokens[i].score);
      g.negated = g.negated || tokens[i].negated;
      group_of[i] = groups.size();
      ++i;
    }
    g.end = i - 1;
    g.score = acc.mean();
    groups.push_back(g);
  }

  std::vector<bool> noun_bound(n, false);
  auto is_free_noun = [&](std::size_t j) { return tokens[j].pos == PosTag::Noun && !noun_bound[j]; };
  auto bind = [&](AdjGroup& g, std::size_t noun) {
    g.noun = noun;
    noun_bound[noun] = true;
  };

  // Rule 2: adjective immediately before a noun.
  for (auto& g : groups) {
    if (g.end + 1 < n && is_free_noun(g.end + 1)) bind(g, g.end + 1);
  }
  // Rule 3: closest preceding unbound noun.
  for (auto& g : groups) {
    if (g.noun) continue;
    for (std::size_t j = g.start; j-- > 0;) {
      if (is_free_noun(j)) {
        bind(g, j);
        break;
      }
    }
  }
  // Rule 4: closest following unbound noun; the closer adjective wins.
  std::vector<std::optional<std::size_t>> candidate(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (groups[gi].noun) continue;
    for (std::size_t j = groups[gi].end + 1; j < n; ++j) {
      if (is_free_noun(j)) {
        candidate[gi] = j;
        break;
      }
    }
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (!candidate[gi]) continue;
    const std::size_t noun = *candidate[gi];
    bool closest = true;
    for (std::size_t other = 0; other < groups.size(); ++other) {
      if (other != gi && candidate[other] == noun &&
          noun - groups[other].end < noun - groups[gi].end) {
        closest = false;
      }
    }
    if (closest) {
      groups[gi].noun = noun;
      noun_bound[noun] = true;
    }
  }

  std::vector<std::optional<std::size_t>> group_for_noun(n);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (groups[gi].noun) group_for_noun[*groups[gi].noun] = gi;
  }

  auto group_text = [&](const AdjGroup& g) {
    std::string s;
    for (std::size_t k = g.start; k <= g.end; ++k) {
      if (!s.empty()) s.push_back(' ');
      s += tokens[k].word;
    }
    return s;
  };
  auto noun_phrase = [&](AdjGroup& g) {
    g.emitted = true;
    const auto& noun = tokens[*g.noun];
    const bool adj_first = g.start < *g.noun;
    AffectUnit unit;
    unit.kind = UnitKind::NounPhrase;
    unit.score = mean_of(g.score, noun.score);
    unit.negated = g.negated || noun.negated;
    unit.text = adj_first ? group_text(g) + " " + noun.word : noun.word + " " + group_text(g);
    return unit;
  };

  std::vector<AffectUnit> units;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tok = tokens[i];
    if (group_of[i]) {
      auto& g = groups[*group_of[i]];
      if (g.emitted) continue;
      if (g.noun) {
        units.push_back(noun_phrase(g));
      } else {
        g.emitted = true;
        if (g.score) units.push_back({UnitKind::FreeWord, g.score, g.negated, group_text(g)});
      }
    } else if (group_for_noun[i]) {
      auto& g = groups[*group_for_noun[i]];
      if (!g.emitted) units.push_back(noun_phrase(g));
    } else if (tok.pos == PosTag::Verb) {
      units.push_back({UnitKind::Verb, tok.score, tok.negated, tok.word});
    } else if (tok.score) {
      units.push_back({UnitKind::FreeWord, tok.score, tok.negated, tok.word});
    }
  }
  return units;
}

std::optional<AffectScore> sentence_affect(std::span<const AffectUnit> units, double verb_dominance) {
  Accum base;
  Accum verbs;
  for (const auto& unit : units) {
    if (!unit.score) continue;
    (unit.kind == UnitKind::Verb ? verbs : base).add(*unit.score);
  }
  const auto base_mean = base.mean();
  const auto verb_mean = verbs.mean();
  if (!verb_mean) return base_mean ? std::optional(clamp_score(*base_mean)) : std::nullopt;
  if (!base_mean) return clamp_score(*verb_mean);
  const double a = verb_dominance;
  return clamp_score({a * verb_mean->valence + (1.0 - a) * base_mean->valence,
                      a * verb_mean->arousal + (1.0 - a) * base_mean->arousal});
}

SongAffect song_affect(std::span<const SentenceAffect> sentences) {
  double weighted_valence = 0.0;
  double weighted_arousal = 0.0;
  double total_weight = 0.0;
  for (const auto& s : sentences) {
    if (!s.score) continue;
    weighted_valence += s.score->valence * s.weight;
    weighted_arousal += s.score->arousal * s.weight;
    total_weight += s.weight;
  }
  if (!(total_weight > 0.0)) {
    throw AffectUnavailableError("no lyric line contains a lexicon word");
  }
  return {std::clamp(weighted_valence / total_weight, kAffectMin, kAffectMax),
          std::clamp(weighted_arousal / total_weight, kAffectMin, kAffectMax)};
}

AffectEngine::AffectEngine(const Lexicon& lexicon, const PosTagger& tagger, AffectConfig config)
    : lexicon_(&lexicon), tagger_(&tagger), config_(config) {
  if (config_.verb_dominance < 0.0 || config_.verb_dominance > 1.0) {
    throw ConfigError("verb dominance must lie in [0, 1]");
  }
}

std::optional<AffectScore> AffectEngine::score_sentence(const Sentence& sentence) const {
  auto tokens = apply_negation(score_tokens(sentence, *lexicon_), config_.negation_window);
  const auto units = bind_adjectives(tokens);
  return sentence_affect(units, config_.verb_dominance);
}

SongAnalysis AffectEngine::analyze(const LyricDocument& document) const {
  LyricDocument tagged = document;
  tagger_->tag_document(tagged);

  SongAnalysis analysis;
  for (const auto& seg : tagged.segments) {
    for (const auto& sentence : seg.sentences) {
      analysis.sentences.push_back({sentence.text, score_sentence(sentence), seg.weight});
    }
  }
  analysis.song = song_affect(analysis.sentences);
  return analysis;
}

}  // namespace moodloom
