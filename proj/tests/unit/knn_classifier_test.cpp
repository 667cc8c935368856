#include "moodloom/knn_classifier.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "moodloom/error.hpp"

namespace moodloom {
namespace {

using enum MoodClass;

FeatureVector fill(double x) {
  FeatureVector v;
  v.values.fill(x);
  return v;
}

FeatureVector random_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FeatureVector v;
  for (auto& x : v.values) x = u(rng);
  return v;
}

ScalingParams unit_scaling() {
  ScalingParams p;
  p.min.fill(0.0);
  p.max.fill(1.0);
  return p;
}

std::string row_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "song-%03zu", i);
  return buf;
}

TEST(WeightedDistance, Examples) {
  EXPECT_EQ(weighted_distance(fill(0.3), fill(0.3)), 0.0);
  EXPECT_NEAR(weighted_distance(fill(0.0), fill(1.0)), std::sqrt(5.9), 1e-12);
  EXPECT_NEAR(weighted_distance(fill(0.0), fill(1.0)), 2.428992, 1e-6);
}

TEST(WeightedDistance, DefaultWeights) {
  const FeatureWeights expected{1.0, 0.7, 1.0, 0.8, 1.0, 0.5, 0.9};
  EXPECT_EQ(kDefaultFeatureWeights, expected);
  EXPECT_EQ(kDefaultK, 30u);
  EXPECT_EQ(kDefaultThreshold, 13u);
}

TEST(WeightedDistance, Properties) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const auto x = random_vector(rng), y = random_vector(rng);
    // plain Euclidean distance with unit weights
    double sq = 0.0;
    for (std::size_t j = 0; j < kFeatureCount; ++j) sq += (x[j] - y[j]) * (x[j] - y[j]);
    EXPECT_NEAR(weighted_distance(x, y, kUnitFeatureWeights), std::sqrt(sq), 1e-12);
    EXPECT_EQ(weighted_distance(x, y), weighted_distance(y, x));
    EXPECT_EQ(weighted_distance(x, x), 0.0);

    FeatureWeights w;
    for (auto& wj : w) wj = u(rng);
    auto heavier = w;
    heavier[rng() % kFeatureCount] += u(rng);
    EXPECT_LE(weighted_distance(x, y, w), weighted_distance(x, y, heavier));
  }
}

TEST(ClassifyCounts, Examples) {
  auto r = classify_counts({{Sad, 15}, {Calm, 14}, {Happy, 3}}, 13);
  EXPECT_EQ(r.classes, (MoodSet{Sad, Calm}));
  EXPECT_EQ(r.effective_threshold, 13u);

  r = classify_counts({{Romantic, 9}, {Sad, 8}}, 13);
  EXPECT_EQ(r.classes, (MoodSet{Romantic}));
  EXPECT_EQ(r.effective_threshold, 9u);

  r = classify_counts({{Happy, 13}}, 13);
  EXPECT_EQ(r.classes, (MoodSet{Happy}));
  EXPECT_EQ(r.effective_threshold, 13u);
}

TEST(ClassifyCounts, NeverEmptyAndInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::map<MoodClass, std::size_t> counts;
    for (auto c : kAllMoodClasses) {
      if (rng() % 2) counts[c] = 1 + rng() % 30;
    }
    if (counts.empty()) counts[Calm] = 1;
    const std::size_t t = 1 + rng() % 30;
    const auto r = classify_counts(counts, t);
    ASSERT_FALSE(r.classes.empty());
    EXPECT_LE(r.effective_threshold, t);
    for (auto c : r.classes.to_vector()) EXPECT_GE(counts[c], r.effective_threshold);
    // counting oracle: the effective threshold is min(t, max count)
    std::size_t top = 0;
    for (auto [c, n] : counts) top = std::max(top, n);
    EXPECT_EQ(r.effective_threshold, std::min(t, top));
  }
}

TEST(ClassifyCounts, RaisingThresholdNeverAddsClasses) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    std::map<MoodClass, std::size_t> counts;
    for (auto c : kAllMoodClasses) counts[c] = rng() % 31;
    const std::size_t t1 = 1 + rng() % 30;
    const std::size_t t2 = t1 + rng() % (31 - t1);
    const auto r1 = classify_counts(counts, t1);
    const auto r2 = classify_counts(counts, t2);
    if (r1.effective_threshold == t1 && r2.effective_threshold == t2) {
      EXPECT_TRUE(r2.classes.is_subset_of(r1.classes));
    }
  }
}

TEST(CountClasses, MultiLabelNeighborsCountForEachClass) {
  TrainingRow a{fill(0), MoodSet{Sad, Calm}, "a"};
  TrainingRow b{fill(0), MoodSet{Sad}, "b"};
  std::vector<Neighbor> n{{&a, 0.0}, {&b, 0.1}};
  const auto counts = count_classes(n);
  EXPECT_EQ(counts.at(Sad), 2u);
  EXPECT_EQ(counts.at(Calm), 1u);
  EXPECT_FALSE(counts.contains(Happy));
}

TEST(NearestNeighbors, ExactMatchFirstAndFullModel) {
  std::mt19937_64 rng(8);
  std::vector<TrainingRow> rows;
  for (std::size_t i = 0; i < 10; ++i) rows.push_back({random_vector(rng), MoodSet{Calm}, row_id(i)});
  const auto probe = rows[6].vector;
  auto model = TrainedModel::build(rows, {10, 1, kDefaultFeatureWeights}, unit_scaling());
  const auto nn = nearest_neighbors(model, probe);
  ASSERT_EQ(nn.size(), 10u);
  EXPECT_EQ(nn[0].row->song_id, row_id(6));
  EXPECT_EQ(nn[0].distance, 0.0);
}

TEST(NearestNeighbors, MatchesExhaustiveSortOracle) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    const std::size_t k = 1 + rng() % n;
    std::vector<TrainingRow> rows;
    // coarse grid values force distance ties so the id tie-break matters
    const bool grid = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto v = random_vector(rng);
      if (grid) {
        for (auto& x : v.values) x = static_cast<double>(rng() % 3) / 2.0;
      }
      rows.push_back({v, MoodSet{kAllMoodClasses[rng() % 9]}, row_id((i * 37) % 101)});
    }
    FeatureWeights w = kDefaultFeatureWeights;
    if (trial % 3 == 0) w = kUnitFeatureWeights;
    auto query = random_vector(rng);
    if (grid) {
      for (auto& x : query.values) x = static_cast<double>(rng() % 3) / 2.0;
    }
    const auto model = TrainedModel::build(rows, {k, 1, w}, unit_scaling());

    std::vector<std::pair<double, std::string>> all;
    for (const auto& r : rows) all.emplace_back(weighted_distance(query, r.vector, w), r.song_id);
    std::sort(all.begin(), all.end());

    const auto got = nearest_neighbors(model, query);
    ASSERT_EQ(got.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_EQ(got[i].row->song_id, all[i].second) << "trial " << trial << " rank " << i;
      EXPECT_EQ(got[i].distance, all[i].first);
    }
  }
}

TEST(TrainedModel, BuildValidation) {
  std::vector<TrainingRow> rows{{fill(0.5), MoodSet{Calm}, "a"}, {fill(0.2), MoodSet{Sad}, "b"}};
  EXPECT_THROW(TrainedModel::build(rows, {3, 1, kDefaultFeatureWeights}, unit_scaling()), ModelError);
  EXPECT_THROW(TrainedModel::build(rows, {2, 3, kDefaultFeatureWeights}, unit_scaling()), ModelError);
  EXPECT_THROW(TrainedModel::build(rows, {2, 0, kDefaultFeatureWeights}, unit_scaling()), ModelError);
  auto bad_w = kDefaultFeatureWeights;
  bad_w[2] = -1.0;
  EXPECT_THROW(TrainedModel::build(rows, {2, 1, bad_w}, unit_scaling()), ModelError);

  auto unlabeled = rows;
  unlabeled[1].classes = MoodSet{};
  EXPECT_THROW(TrainedModel::build(unlabeled, {2, 1, kDefaultFeatureWeights}, unit_scaling()),
               ModelError);
  auto unscaled = rows;
  unscaled[0].vector[Feature::Bpm] = 120.0;
  EXPECT_THROW(TrainedModel::build(unscaled, {2, 1, kDefaultFeatureWeights}, unit_scaling()),
               ModelError);
  EXPECT_NO_THROW(TrainedModel::build(rows, {2, 2, kDefaultFeatureWeights}, unit_scaling()));
}

TEST(TrainedModel, JsonRoundTripPreservesPredictions) {
  std::mt19937_64 rng(21);
  std::vector<TrainingRow> rows;
  for (std::size_t i = 0; i < 40; ++i) {
    MoodSet s{kAllMoodClasses[rng() % 9]};
    if (rng() % 3 == 0) s.insert(kAllMoodClasses[rng() % 9]);
    rows.push_back({random_vector(rng), s, row_id(i)});
  }
  ScalingParams scaling = unit_scaling();
  scaling.max[3] = 180.0;
  AnalysisSettings analysis{"lex.csv", "tags.tsv", 3.0, 1.0, 0.4};
  const auto model = TrainedModel::build(rows, {7, 3, kDefaultFeatureWeights}, scaling, analysis);
  const auto text = model.to_json().dump();
  const auto back = TrainedModel::from_json(nlohmann::json::parse(text));
  EXPECT_EQ(back.to_json().dump(), text);
  EXPECT_EQ(back.params().k, 7u);
  EXPECT_EQ(back.analysis().chorus_weight, 3.0);
  EXPECT_EQ(back.scaling().max[3], 180.0);
  for (int q = 0; q < 50; ++q) {
    const auto query = random_vector(rng);
    const auto a = classify(model, query), b = classify(back, query);
    EXPECT_EQ(a.classes, b.classes);
    EXPECT_EQ(a.effective_threshold, b.effective_threshold);
  }
  EXPECT_THROW(TrainedModel::from_json(nlohmann::json::parse(R"({"format": "other"})")), ModelError);
}

TEST(Classify, EndToEndOnClusters) {
  std::vector<TrainingRow> rows;
  for (std::size_t i = 0; i < 30; ++i) rows.push_back({fill(0.1), MoodSet{Sad}, row_id(i)});
  for (std::size_t i = 30; i < 60; ++i) rows.push_back({fill(0.9), MoodSet{Happy, Dance}, row_id(i)});
  const auto model = TrainedModel::build(rows, {}, unit_scaling());
  const auto low = classify(model, fill(0.15));
  EXPECT_EQ(low.classes, (MoodSet{Sad}));
  EXPECT_EQ(low.effective_threshold, 13u);
  EXPECT_EQ(low.neighbor_counts.at(Sad), 30u);
  const auto high = classify(model, fill(0.85));
  EXPECT_EQ(high.classes, (MoodSet{Happy, Dance}));

  const auto json = to_json(high);
  EXPECT_EQ(json["effective_threshold"], 13);
  EXPECT_EQ(json["classes"].size(), 2u);
}

TEST(Classify, WithParamsSwapsThreshold) {
  std::vector<TrainingRow> rows;
  for (std::size_t i = 0; i < 20; ++i) rows.push_back({fill(0.1), MoodSet{Sad}, row_id(i)});
  for (std::size_t i = 20; i < 30; ++i) rows.push_back({fill(0.12), MoodSet{Calm}, row_id(i)});
  const auto model = TrainedModel::build(rows, {}, unit_scaling());
  EXPECT_EQ(classify(model, fill(0.1)).classes, (MoodSet{Sad}));
  const auto loose = model.with_params({30, 1, kDefaultFeatureWeights});
  EXPECT_EQ(classify(loose, fill(0.1)).classes, (MoodSet{Sad, Calm}));
  EXPECT_THROW(model.with_params({31, 1, kDefaultFeatureWeights}), ModelError);
}

}  // namespace
}  // namespace moodloom
