#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moodloom/dataset.hpp"
#include "moodloom/pipeline.hpp"
#include "moodloom/synthetic.hpp"
#include "moodloom/text.hpp"
#include "test_support.hpp"

namespace moodloom {
namespace {

using testing::data_path;
using testing::fixture_path;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& content) {
  std::ofstream(path) << content;
}

std::string demo(const std::string& rel) { return fixture_path("demo/" + rel); }

// fetch + dataset build over the demo fixtures into `dir`.
std::string build_demo_dataset(const TempDir& dir) {
  const auto fetched = dir.file("fetched.jsonl");
  EXPECT_EQ(run({"fetch", "--tags", demo("tags.txt"), "--fixture-dir", demo("tags"), "--out", fetched}).code, 0);
  const auto dataset = dir.file("demo.jsonl");
  const auto r = run({"dataset", "build", "--in", fetched, "--audio-dir", demo("audio"), "--lyrics-dir",
                      demo("lyrics"), "--out", dataset});
  EXPECT_EQ(r.code, 0) << r.err;
  return dataset;
}

TEST(Cli, UsageErrors) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"classify", "--model"}).code, 1);
  EXPECT_EQ(run({"train", "--in", "x.jsonl", "--weights", "1,2,3"}).code, 1);
  EXPECT_EQ(run({"evaluate"}).code, 1);
  r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}

TEST(Cli, LexiconBuildReproducesShippedFile) {
  TempDir dir;
  const auto r = run({"lexicon", "build", "--out", dir.file("lex.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(text::read_file(dir.file("lex.csv")), text::read_file(data_path("lexicon/moodloom_lexicon.csv")));
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_GT(summary["entries"].get<int>(), 250);
}

TEST(Cli, AnalyzeEmitsSentenceScores) {
  const auto r = run({"analyze", "--lyrics", fixture_path("lyrics/polar_chorus.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("valence"));
  EXPECT_TRUE(j.contains("arousal"));
  ASSERT_EQ(j["sentences"].size(), 9u);
  EXPECT_EQ(j["sentences"][3]["weight"], 2.0);
  EXPECT_EQ(j["sentences"][0]["weight"], 1.0);

  EXPECT_EQ(run({"analyze", "--lyrics", "/nonexistent.txt"}).code, 2);
  EXPECT_EQ(run({"analyze", "--lyrics", fixture_path("lyrics/polar_chorus.txt"), "--alpha", "2"}).code, 1);
}

TEST(Cli, FetchFixtureModeIsDeterministic) {
  TempDir dir;
  const std::vector<std::string> args{"fetch", "--tags", demo("tags.txt"), "--fixture-dir", demo("tags")};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  const auto records = read_records(in, "fetched");
  EXPECT_EQ(records.size(), 12u);
  EXPECT_EQ(records[0].id(), "Harbor Lights - Slow Tide");
  EXPECT_EQ(records[0].classes, MoodSet{MoodClass::Calm});
}

TEST(Cli, FetchLiveNeedsKeyAndReportsNetworkFailure) {
  TempDir dir;
  write(dir.file("tags.txt"), "mellow\n");
  const char* saved = std::getenv("MOODLOOM_API_KEY");
  const std::string saved_value = saved ? saved : "";
  ::unsetenv("MOODLOOM_API_KEY");
  EXPECT_EQ(run({"fetch", "--tags", dir.file("tags.txt")}).code, 1);
  ::setenv("MOODLOOM_API_KEY", "test-key", 1);
  // nothing listens on port 9 of the loopback interface
  const auto r = run({"fetch", "--tags", dir.file("tags.txt"), "--base-url", "http://127.0.0.1:9/2.0/",
                      "--rate", "100"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("giving up"), std::string::npos) << r.err;
  if (saved) ::setenv("MOODLOOM_API_KEY", saved_value.c_str(), 1);
  else ::unsetenv("MOODLOOM_API_KEY");
}

TEST(Cli, DatasetBuildTrainClassifyEvaluate) {
  TempDir dir;
  const auto dataset = build_demo_dataset(dir);
  const auto records = read_records(dataset);
  ASSERT_EQ(records.size(), 10u);
  for (const auto& r : records) {
    EXPECT_TRUE(r.vector.has_value());
    EXPECT_FALSE(r.classes.empty());
  }

  const auto model = dir.file("model.json");
  auto r = run({"train", "--in", dataset, "--k", "3", "--threshold", "2", "--out", model});
  ASSERT_EQ(r.code, 0) << r.err;

  const std::string song = dir.file("song.json");
  write(song, R"({"artist": "Test", "title": "Rainy", "audio": {"bpm": 70, "mode": "minor",
      "loudness_db": -14, "danceability": 0.3, "energy": 0.2},
      "lyrics": ")" + demo("lyrics/olive-vane__soft-rain.txt") + "\"}");
  r = run({"classify", "--model", model, "--song", song});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["song"], "Test - Rainy");
  EXPECT_FALSE(j["classes"].empty());
  EXPECT_LE(j["effective_threshold"].get<int>(), 2);

  r = run({"evaluate", "--model", model, "--test", dataset});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* col : {"Set", "Total", "Incorrect", "Correct", "Accuracy (%)", "All"}) {
    EXPECT_NE(r.out.find(col), std::string::npos) << col;
  }
  r = run({"evaluate", "--model", model, "--test", dataset, "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["total"]["total"], 10);
}

TEST(Cli, ClassifyDataErrors) {
  TempDir dir;
  const auto dataset = build_demo_dataset(dir);
  const auto model = dir.file("model.json");
  ASSERT_EQ(run({"train", "--in", dataset, "--k", "3", "--threshold", "2", "--out", model}).code, 0);

  write(dir.file("noise.txt"), "zzyzx qwfp\nblorft\n");
  write(dir.file("unscorable.json"), R"({"artist": "A", "title": "Noise", "lyrics": "noise.txt",
      "audio": {"bpm": 100, "mode": "major", "loudness_db": -8, "danceability": 0.5, "energy": 0.5}})");
  auto r = run({"classify", "--model", model, "--song", dir.file("unscorable.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lexicon"), std::string::npos) << r.err;

  write(dir.file("missing.json"), R"({"artist": "A", "title": "Gone", "lyrics": "gone.txt",
      "audio": {"bpm": 100, "mode": "major", "loudness_db": -8, "danceability": 0.5, "energy": 0.5}})");
  EXPECT_EQ(run({"classify", "--model", model, "--song", dir.file("missing.json")}).code, 2);

  write(dir.file("bad_model.json"), "{\"format\": \"nope\"}");
  EXPECT_EQ(run({"classify", "--model", dir.file("bad_model.json"), "--song", dir.file("missing.json")}).code, 2);
  EXPECT_EQ(run({"classify", "--model", model, "--song", dir.file("missing.json"), "--k", "30"}).code, 2);
}

TEST(Cli, SplitAndClassifyAreByteIdenticalAcrossRuns) {
  TempDir dir;
  const auto synth = dir.file("synth.jsonl");
  ASSERT_EQ(run({"dataset", "synth", "--songs", "120", "--seed", "5", "--out", synth}).code, 0);

  const auto a = run({"dataset", "split", "--in", synth, "--seed", "42", "--out-dir", dir.file("a")});
  const auto b = run({"dataset", "split", "--in", synth, "--seed", "42", "--out-dir", dir.file("b")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  for (int i = 1; i <= 4; ++i) {
    const auto name = "/fold" + std::to_string(i) + ".jsonl";
    EXPECT_EQ(text::read_file(dir.file("a") + name), text::read_file(dir.file("b") + name));
  }
  const auto other = run({"dataset", "split", "--in", synth, "--seed", "43", "--out-dir", dir.file("c")});
  EXPECT_NE(text::read_file(dir.file("a") + "/fold1.jsonl"), text::read_file(dir.file("c") + "/fold1.jsonl"));

  const auto model = dir.file("model.json");
  ASSERT_EQ(run({"train", "--in", dir.file("a") + "/fold1.jsonl", "--in", dir.file("a") + "/fold2.jsonl",
                 "--in", dir.file("a") + "/fold3.jsonl", "--out", model})
                .code,
            0);
  std::istringstream fold4(text::read_file(dir.file("a") + "/fold4.jsonl"));
  const auto held_out = read_records(fold4, "fold4");
  write(dir.file("song.json"), to_json(held_out[0]).dump());
  const auto c1 = run({"classify", "--model", model, "--song", dir.file("song.json")});
  const auto c2 = run({"classify", "--model", model, "--song", dir.file("song.json")});
  ASSERT_EQ(c1.code, 0) << c1.err;
  EXPECT_EQ(c1.out, c2.out);
}

TEST(Cli, CrossValidationAndSweep) {
  TempDir dir;
  const auto synth = dir.file("synth.jsonl");
  ASSERT_EQ(run({"dataset", "synth", "--songs", "160", "--out", synth}).code, 0);
  ASSERT_EQ(run({"dataset", "split", "--in", synth, "--out-dir", dir.path().string()}).code, 0);
  std::vector<std::string> args{"evaluate", "--cv"};
  for (int i = 1; i <= 4; ++i) args.push_back(dir.file("fold" + std::to_string(i) + ".jsonl"));
  args.push_back("--json");
  const auto r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["sets"].size(), 4u);
  EXPECT_EQ(report["total"]["total"], 160);

  const auto s = run({"sweep", "--in", synth, "--k-values", "10,30", "--thresholds", "1,13",
                      "--vary", "valence=0.5,1.5", "--json"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto rows = nlohmann::json::parse(s.out);
  // (k=10: t=1) + (k=30: t=1, t=13), three weight variants each
  EXPECT_EQ(rows.size(), 9u);
  EXPECT_EQ(run({"sweep", "--in", synth, "--vary", "tempo=1"}).code, 1);
}

TEST(Cli, TrainedSongsRecoverTheirOwnClass) {
  SyntheticConfig config;
  config.songs = 200;
  const auto records = generate_synthetic_dataset(config);
  const auto model = train_model(records, {});
  for (const auto& r : records) {
    const auto result = predict(model, *r.vector);
    std::size_t own_best = 0;
    for (auto c : r.classes.to_vector()) {
      if (auto it = result.neighbor_counts.find(c); it != result.neighbor_counts.end()) {
        own_best = std::max(own_best, it->second);
      }
    }
    if (own_best >= model.params().threshold) {
      EXPECT_FALSE((result.classes & r.classes).empty()) << r.id();
    }
  }
}

}  // namespace
}  // namespace moodloom
