#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "moodloom/error.hpp"
#include "moodloom/synthetic.hpp"
#include "moodloom/tag_client.hpp"
#include "moodloom/text.hpp"

namespace fs = std::filesystem;

namespace moodloom::cli {
namespace {

std::vector<std::string> read_tag_list(const std::string& path) {
  std::vector<std::string> tags;
  for (const auto& line : text::split_lines(text::read_file(path))) {
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    tags.emplace_back(t);
  }
  if (tags.empty()) throw DataError(path + ": no tags listed");
  return tags;
}

std::string song_key(const SongRecord& r) { return text::slug(r.artist) + "__" + text::slug(r.title); }

std::string records_text(std::span<const SongRecord> records) {
  std::ostringstream s;
  write_records(s, records);
  return s.str();
}

}  // namespace

int fetch(const RunConfig& rc, const FetchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.limit == 0 || o.tag_limit == 0) throw ConfigError("limits must be at least 1");
  auto config = TagServiceConfig::from_environment(
      o.fixture_dir.empty() ? ServiceMode::Live : ServiceMode::Fixture, o.fixture_dir);
  config.base_url = o.base_url;
  config.requests_per_second = o.rate;
  TagClient client(config);

  std::vector<SongRecord> records;
  const auto tags = read_tag_list(o.tags_file);
  for (const auto& tag : tags) {
    for (auto& track : client.fetch_top_tracks(tag, o.limit)) {
      SongRecord r;
      r.artist = std::move(track.artist);
      r.title = std::move(track.title);
      records.push_back(std::move(r));
    }
  }
  const std::size_t fetched = records.size();
  records = dedupe_records(std::move(records));

  parallel_for(records.size(), rc.jobs, [&](std::size_t i) {
    auto& r = records[i];
    r.tags = client.fetch_top_tags(r.artist, r.title, o.tag_limit);
    r.classes = map_tags_to_classes(r.tags, rc.min_tag_weight);
  });

  std::size_t labeled = 0;
  for (const auto& r : records) labeled += !r.classes.empty();
  write_output(o.out, records_text(records), out);
  err << "fetched " << fetched << " tracks for " << tags.size() << " tags; "
      << fetched - records.size() << " duplicates dropped; " << labeled << " of "
      << records.size() << " songs carry a mood class\n";
  return 0;
}

int dataset_build(const RunConfig& rc, const DatasetBuildOptions& o, std::ostream& out,
                  std::ostream& err) {
  auto records = dedupe_records(read_records(o.input));
  const auto analyzer = rc.load_analyzer();
  const fs::path out_dir =
      o.out.empty() || o.out == "-" ? fs::current_path() : fs::absolute(o.out).parent_path();
  fs::create_directories(out_dir);

  std::vector<std::string> problems(records.size());
  parallel_for(records.size(), rc.jobs, [&](std::size_t i) {
    auto& r = records[i];
    r.classes = map_tags_to_classes(r.tags, rc.min_tag_weight);
    if (r.classes.empty()) {
      problems[i] = "no mood tag at or above weight " + std::to_string(rc.min_tag_weight);
      return;
    }
    const auto key = song_key(r);
    const fs::path audio_path = fs::path(o.audio_dir) / (key + ".json");
    const fs::path lyrics_path = fs::path(o.lyrics_dir) / (key + ".txt");
    try {
      std::ifstream audio_in(audio_path);
      if (!audio_in) throw DataError("no audio features at " + audio_path.string());
      r.audio = audio_from_json(nlohmann::json::parse(audio_in));
      if (!fs::exists(lyrics_path)) throw DataError("no lyrics at " + lyrics_path.string());
      r.lyrics = fs::relative(fs::absolute(lyrics_path), out_dir).generic_string();
      r.vector = compute_features(r, analyzer, out_dir.string());
    } catch (const Error& e) {
      problems[i] = e.what();
    } catch (const nlohmann::json::exception& e) {
      problems[i] = std::string("bad audio file: ") + e.what();
    }
  });

  std::vector<SongRecord> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (problems[i].empty()) {
      kept.push_back(std::move(records[i]));
    } else {
      err << "skipping '" << records[i].id() << "': " << problems[i] << "\n";
    }
  }
  write_output(o.out, records_text(kept), out);
  err << kept.size() << " of " << records.size() << " songs written\n";
  return 0;
}

int dataset_split(const RunConfig& rc, const SplitOptions& o, std::ostream& out, std::ostream&) {
  auto records = read_records(o.input);
  require_unique(records);
  const auto folds = stratified_partition(records, o.folds, rc.seed);

  nlohmann::json summary = {{"seed", rc.seed}, {"folds", nlohmann::json::array()}};
  for (const auto& fold : folds) {
    const auto name = "fold" + std::to_string(fold.index) + ".jsonl";
    write_output((fs::path(o.out_dir) / name).string(), records_text(fold.records), out);
    nlohmann::json counts = nlohmann::json::object();
    for (auto c : kAllMoodClasses) {
      std::size_t n = 0;
      for (const auto& r : fold.records) n += r.classes.contains(c);
      counts[std::string(to_string(c))] = n;
    }
    summary["folds"].push_back(
        {{"index", fold.index}, {"file", name}, {"songs", fold.records.size()}, {"classes", counts}});
  }
  out << summary.dump(2) << "\n";
  return 0;
}

int dataset_synth(const RunConfig& rc, const SynthOptions& o, std::ostream& out, std::ostream&) {
  SyntheticConfig config;
  config.songs = o.songs;
  config.spread = o.spread;
  config.secondary_label_rate = o.secondary_rate;
  config.seed = rc.seed;
  write_output(o.out, records_text(generate_synthetic_dataset(config)), out);
  return 0;
}

}  // namespace moodloom::cli
