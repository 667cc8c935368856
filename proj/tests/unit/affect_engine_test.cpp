#include "moodloom/affect_engine.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "moodloom/error.hpp"

namespace moodloom {
namespace {

using enum PosTag;

ScoredToken tok(std::string word, PosTag pos, double v, double a) {
  return {std::move(word), pos, AffectScore{v, a}, false};
}
ScoredToken bare(std::string word, PosTag pos) { return {std::move(word), pos, std::nullopt, false}; }

Lexicon make_lexicon(std::initializer_list<std::tuple<const char*, double, double>> rows) {
  Lexicon lex;
  for (const auto& [w, v, a] : rows) lex.insert({w, {v, a}, LexiconSource::Anew});
  return lex;
}

Sentence sentence_of(std::initializer_list<std::pair<const char*, PosTag>> words) {
  Sentence s;
  for (const auto& [w, p] : words) {
    s.text += (s.text.empty() ? "" : " ") + std::string(w);
    s.tokens.push_back({w, w, p});
  }
  return s;
}

// --- negation ---

TEST(ApplyNegation, InvertsValenceOnly) {
  auto out = apply_negation({bare("not", Negation), tok("happy", Adj, 9.0, 6.0)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].negated);
  EXPECT_DOUBLE_EQ(out[0].score->valence, 1.0);
  EXPECT_DOUBLE_EQ(out[0].score->arousal, 6.0);
}

TEST(ApplyNegation, DoubleNegationCancels) {
  auto out = apply_negation({bare("not", Negation), bare("not", Negation), tok("happy", Adj, 9.0, 6.0)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_FALSE(out[0].negated);
  EXPECT_DOUBLE_EQ(out[0].score->valence, 9.0);
}

TEST(ApplyNegation, NoTargetInWindowHasNoEffect) {
  auto out = apply_negation({bare("not", Negation), bare("the", Other), tok("rain", Noun, 4.0, 5.0)});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out[1].score->valence, 4.0);
  EXPECT_FALSE(out[1].negated);

  // target five tokens away is out of the default window of four
  std::vector<ScoredToken> far{bare("never", Negation), bare("a", Other), bare("b", Other),
                               bare("c", Other), bare("d", Other), tok("love", Verb, 8.0, 6.0)};
  EXPECT_DOUBLE_EQ(apply_negation(far).back().score->valence, 8.0);
  EXPECT_DOUBLE_EQ(apply_negation(far, 5).back().score->valence, 2.0);
}

TEST(ApplyNegation, TargetsNearestVerbOrAdjective) {
  auto out = apply_negation({bare("not", Negation), tok("very", Adv, 5.0, 5.0),
                             tok("sad", Adj, 2.0, 3.0), tok("cry", Verb, 2.0, 6.0)});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_DOUBLE_EQ(out[0].score->valence, 5.0);
  EXPECT_DOUBLE_EQ(out[1].score->valence, 8.0);
  EXPECT_DOUBLE_EQ(out[2].score->valence, 2.0);
}

TEST(ApplyNegation, IsAnInvolution) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const AffectScore s{u(rng), u(rng)};
    EXPECT_NEAR(negate(negate(s)).valence, s.valence, 1e-12);
    EXPECT_EQ(negate(s).arousal, s.arousal);
    EXPECT_GE(negate(s).valence, 0.0);
    EXPECT_LE(negate(s).valence, 10.0);
  }
}

// --- adjective binding ---

TEST(BindAdjectives, AdjectiveBeforeNoun) {
  std::vector<ScoredToken> t{tok("happy", Adj, 9, 6), tok("child", Noun, 6, 4)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].kind, UnitKind::NounPhrase);
  EXPECT_DOUBLE_EQ(units[0].score->valence, 7.5);
  EXPECT_DOUBLE_EQ(units[0].score->arousal, 5.0);
  EXPECT_EQ(units[0].text, "happy child");
}

TEST(BindAdjectives, AdjacentAdjectivesMergeThenBind) {
  std::vector<ScoredToken> t{tok("dark", Adj, 3, 4), tok("gloomy", Adj, 2, 3), tok("night", Noun, 5, 4)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].kind, UnitKind::NounPhrase);
  EXPECT_DOUBLE_EQ(units[0].score->valence, 3.75);
  EXPECT_DOUBLE_EQ(units[0].score->arousal, 3.75);
}

TEST(BindAdjectives, AdjectiveAfterNounBindsBackward) {
  std::vector<ScoredToken> t{tok("child", Noun, 6, 4), tok("happy", Adj, 9, 6)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].kind, UnitKind::NounPhrase);
  EXPECT_DOUBLE_EQ(units[0].score->valence, 7.5);
  EXPECT_DOUBLE_EQ(units[0].score->arousal, 5.0);
}

TEST(BindAdjectives, BackwardSkipsNounsAlreadyBound) {
  // "old man, sad": old binds man by adjacency, so sad finds no free noun
  // before it and stays free.
  std::vector<ScoredToken> t{tok("old", Adj, 4, 3), tok("man", Noun, 5, 5), tok("sad", Adj, 2, 3)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0].kind, UnitKind::NounPhrase);
  EXPECT_EQ(units[1].kind, UnitKind::FreeWord);
  EXPECT_DOUBLE_EQ(units[1].score->valence, 2.0);
}

TEST(BindAdjectives, ForwardCompetitionCloserWins) {
  // happy very sad very child: neither adjective touches the noun or has one
  // behind it; sad is closer to child and wins, happy stays free.
  std::vector<ScoredToken> t{tok("happy", Adj, 9, 6), bare("very", Adv), tok("sad", Adj, 2, 3),
                             bare("very", Adv), tok("child", Noun, 6, 4)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0].kind, UnitKind::FreeWord);
  EXPECT_EQ(units[0].text, "happy");
  EXPECT_EQ(units[1].kind, UnitKind::NounPhrase);
  EXPECT_EQ(units[1].text, "sad child");
  EXPECT_DOUBLE_EQ(units[1].score->valence, 4.0);
  EXPECT_DOUBLE_EQ(units[1].score->arousal, 3.5);
}

TEST(BindAdjectives, UnscoredMemberUsesOtherScore) {
  std::vector<ScoredToken> t{tok("happy", Adj, 9, 6), bare("zorblax", Noun)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 1u);
  EXPECT_DOUBLE_EQ(units[0].score->valence, 9.0);
}

TEST(BindAdjectives, VerbsAndFreeWords) {
  std::vector<ScoredToken> t{tok("kill", Verb, 1.5, 7), bare("the", Other), tok("sun", Noun, 7, 5),
                             bare("run", Verb)};
  auto units = bind_adjectives(t);
  ASSERT_EQ(units.size(), 3u);
  EXPECT_EQ(units[0].kind, UnitKind::Verb);
  EXPECT_EQ(units[1].kind, UnitKind::FreeWord);
  EXPECT_EQ(units[2].kind, UnitKind::Verb);
  EXPECT_FALSE(units[2].score.has_value());
}

// Sequential re-statement of the four rules over a plain token list.
struct OracleUnit {
  UnitKind kind;
  std::optional<AffectScore> score;
};

std::vector<OracleUnit> bind_oracle(const std::vector<ScoredToken>& t) {
  const int n = static_cast<int>(t.size());
  struct G {
    int s, e;
    std::optional<AffectScore> score;
    int noun = -1;
  };
  std::vector<G> gs;
  for (int i = 0; i < n; ++i) {
    if (t[i].pos != Adj || (i > 0 && t[i - 1].pos == Adj)) continue;
    int e = i;
    while (e + 1 < n && t[e + 1].pos == Adj) ++e;
    double v = 0, a = 0;
    int c = 0;
    for (int k = i; k <= e; ++k) {
      if (t[k].score) v += t[k].score->valence, a += t[k].score->arousal, ++c;
    }
    gs.push_back({i, e, c ? std::optional(AffectScore{v / c, a / c}) : std::nullopt});
  }
  std::vector<int> owner(n, -1);
  for (int gi = 0; gi < (int)gs.size(); ++gi) {
    int j = gs[gi].e + 1;
    if (j < n && t[j].pos == Noun && owner[j] < 0) gs[gi].noun = j, owner[j] = gi;
  }
  for (int gi = 0; gi < (int)gs.size(); ++gi) {
    if (gs[gi].noun >= 0) continue;
    for (int j = gs[gi].s - 1; j >= 0; --j) {
      if (t[j].pos == Noun && owner[j] < 0) {
        gs[gi].noun = j, owner[j] = gi;
        break;
      }
    }
  }
  std::map<int, int> best;  // noun -> closest contender
  for (int gi = 0; gi < (int)gs.size(); ++gi) {
    if (gs[gi].noun >= 0) continue;
    for (int j = gs[gi].e + 1; j < n; ++j) {
      if (t[j].pos == Noun && owner[j] < 0) {
        if (!best.count(j) || gs[gi].e > gs[best[j]].e) best[j] = gi;
        break;
      }
    }
  }
  for (auto [noun, gi] : best) gs[gi].noun = noun, owner[noun] = gi;

  std::vector<OracleUnit> out;
  std::vector<bool> done(gs.size());
  auto phrase = [&](int gi) {
    done[gi] = true;
    const auto& ns = t[gs[gi].noun].score;
    const auto& as = gs[gi].score;
    std::optional<AffectScore> s;
    if (as && ns) s = AffectScore{(as->valence + ns->valence) / 2, (as->arousal + ns->arousal) / 2};
    else s = as ? as : ns;
    out.push_back({UnitKind::NounPhrase, s});
  };
  for (int i = 0; i < n; ++i) {
    int gi = -1;
    for (int g = 0; g < (int)gs.size(); ++g) {
      if (i >= gs[g].s && i <= gs[g].e) gi = g;
    }
    if (gi >= 0) {
      if (done[gi]) continue;
      if (gs[gi].noun >= 0) phrase(gi);
      else if (done[gi] = true; gs[gi].score) out.push_back({UnitKind::FreeWord, gs[gi].score});
    } else if (owner[i] >= 0) {
      if (!done[owner[i]]) phrase(owner[i]);
    } else if (t[i].pos == Verb) {
      out.push_back({UnitKind::Verb, t[i].score});
    } else if (t[i].score) {
      out.push_back({UnitKind::FreeWord, t[i].score});
    }
  }
  return out;
}

TEST(BindAdjectives, MatchesSequentialOracleOnRandomSentences) {
  std::mt19937_64 rng(2024);
  const PosTag pos[] = {Noun, Verb, Adj, Adj, Adv, Other};
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<ScoredToken> t;
    const int len = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < len; ++i) {
      const PosTag p = pos[rng() % std::size(pos)];
      if (rng() % 4 == 0) t.push_back(bare("w", p));
      else t.push_back(tok("w", p, u(rng), u(rng)));
    }
    const auto got = bind_adjectives(t);
    const auto want = bind_oracle(t);
    ASSERT_EQ(got.size(), want.size()) << "trial " << trial;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].kind, want[i].kind);
      ASSERT_EQ(got[i].score.has_value(), want[i].score.has_value());
      if (got[i].score) {
        EXPECT_NEAR(got[i].score->valence, want[i].score->valence, 1e-12);
        EXPECT_NEAR(got[i].score->arousal, want[i].score->arousal, 1e-12);
        EXPECT_GE(got[i].score->valence, 0.0);
        EXPECT_LE(got[i].score->valence, 10.0);
      }
    }
  }
}

// --- sentence and song scores ---

TEST(SentenceAffect, VerbPullsSentence) {
  std::vector<AffectUnit> units{{UnitKind::Verb, AffectScore{1.5, 7.0}, false, "kill"},
                                {UnitKind::NounPhrase, AffectScore{7.5, 5.0}, false, "happy child"}};
  auto s = sentence_affect(units, 0.6);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->valence, 3.9, 1e-12);
  EXPECT_NEAR(s->arousal, 0.6 * 7.0 + 0.4 * 5.0, 1e-12);
}

TEST(SentenceAffect, SingleUnitAndAbsent) {
  std::vector<AffectUnit> one{{UnitKind::FreeWord, AffectScore{5, 5}, false, "x"}};
  EXPECT_EQ(*sentence_affect(one), (AffectScore{5, 5}));
  std::vector<AffectUnit> verbs_only{{UnitKind::Verb, AffectScore{2, 8}, false, "x"},
                                     {UnitKind::Verb, AffectScore{4, 6}, false, "y"}};
  EXPECT_EQ(*sentence_affect(verbs_only), (AffectScore{3, 7}));
  std::vector<AffectUnit> none{{UnitKind::Verb, std::nullopt, false, "x"}};
  EXPECT_FALSE(sentence_affect(none).has_value());
  EXPECT_FALSE(sentence_affect({}).has_value());
}

TEST(SongAffect, WeightedMean) {
  std::vector<SentenceAffect> s{{"a", AffectScore{6, 4}, 1.0}, {"b", AffectScore{8, 6}, 2.0}};
  auto song = song_affect(s);
  EXPECT_NEAR(song.valence, 22.0 / 3.0, 1e-12);
  EXPECT_NEAR(song.arousal, 16.0 / 3.0, 1e-12);
}

TEST(SongAffect, UnscoredSentencesCarryNoWeight) {
  std::vector<SentenceAffect> s{{"a", AffectScore{6, 4}, 1.0}, {"b", std::nullopt, 5.0}};
  auto song = song_affect(s);
  EXPECT_DOUBLE_EQ(song.valence, 6.0);
  EXPECT_DOUBLE_EQ(song.arousal, 4.0);
}

TEST(SongAffect, NoScoredSentenceIsAnError) {
  std::vector<SentenceAffect> s{{"a", std::nullopt, 1.0}};
  EXPECT_THROW(song_affect(s), AffectUnavailableError);
  EXPECT_THROW(song_affect({}), AffectUnavailableError);
}

TEST(SongAffect, MatchesLoopOracleAndIsScaleInvariant) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<SentenceAffect> s;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      std::optional<AffectScore> score;
      if (i == 0 || rng() % 3 != 0) score = AffectScore{u(rng), u(rng)};
      s.push_back({"", score, rng() % 2 ? 2.0 : 1.0});
    }
    double sv = 0, sa = 0, sw = 0;
    for (const auto& x : s) {
      if (!x.score) continue;
      sv += x.score->valence * x.weight;
      sa += x.score->arousal * x.weight;
      sw += x.weight;
    }
    const auto song = song_affect(s);
    EXPECT_NEAR(song.valence, sv / sw, 1e-9);
    EXPECT_NEAR(song.arousal, sa / sw, 1e-9);

    auto doubled = s;
    for (auto& x : doubled) x.weight *= 2.0;
    const auto song2 = song_affect(doubled);
    EXPECT_NEAR(song2.valence, song.valence, 1e-9);
    EXPECT_NEAR(song2.arousal, song.arousal, 1e-9);

    auto constant = s;
    for (auto& x : constant) {
      if (x.score) x.score = AffectScore{4.25, 7.5};
    }
    EXPECT_NEAR(song_affect(constant).valence, 4.25, 1e-12);
  }
}

// --- engine ---

TEST(AffectEngine, KillTheHappyChildTurnsNegative) {
  const auto lex = make_lexicon({{"kill", 1.5, 7.0}, {"happy", 9.0, 6.0}, {"child", 6.0, 4.0}});
  const PosTagger tagger;
  AffectEngine engine(lex, tagger);
  auto s = sentence_of({{"kill", Verb}, {"the", Other}, {"happy", Adj}, {"child", Noun}});
  auto score = engine.score_sentence(s);
  ASSERT_TRUE(score);
  EXPECT_NEAR(score->valence, 3.9, 1e-12);
  EXPECT_LT(score->valence, 5.0);
}

TEST(AffectEngine, NegatedHappyBoyIsNegative) {
  const auto lex = make_lexicon({{"happy", 9.0, 6.0}});
  const PosTagger tagger;
  AffectEngine engine(lex, tagger);
  auto s = sentence_of(
      {{"the", Other}, {"boy", Noun}, {"was", Verb}, {"not", Negation}, {"happy", Adj}});
  auto score = engine.score_sentence(s);
  ASSERT_TRUE(score);
  EXPECT_DOUBLE_EQ(score->valence, 1.0);
}

TEST(AffectEngine, AnalyzeWeightsChorus) {
  const auto lex = make_lexicon({{"happy", 9.0, 6.0}, {"sad", 1.0, 3.0}});
  const PosTagger tagger({{"happy", Adj}, {"sad", Adj}});
  AffectEngine engine(lex, tagger);
  auto doc = parse_lyrics("sad\n\n[Chorus]\nhappy", {2.0, 1.0});
  auto result = engine.analyze(doc);
  ASSERT_EQ(result.sentences.size(), 2u);
  EXPECT_NEAR(result.song.valence, (1.0 + 2.0 * 9.0) / 3.0, 1e-12);
  EXPECT_NEAR(result.song.arousal, (3.0 + 2.0 * 6.0) / 3.0, 1e-12);
}

TEST(AffectEngine, RejectsBadDominance) {
  const Lexicon lex;
  const PosTagger tagger;
  EXPECT_THROW(AffectEngine(lex, tagger, {1.5, 4}), ConfigError);
  EXPECT_THROW(AffectEngine(lex, tagger, {-0.1, 4}), ConfigError);
}

}  // namespace
}  // namespace moodloom
