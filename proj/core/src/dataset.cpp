#include "moodloom/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "moodloom/error.hpp"
#include "moodloom/random.hpp"
#include "moodloom/text.hpp"

namespace moodloom {
namespace {

using enum MoodClass;

constexpr std::pair<std::string_view, MoodClass> kMoodTags[] = {
    {"slow", Calm}, {"soft", Calm}, {"mellow", Calm}, {"peaceful", Calm}, {"calm", Calm},
    {"serene", Calm}, {"relaxed", Calm}, {"down-tempo", Calm}, {"meditative", Calm},
    {"energetic", Energetic}, {"upbeat", Energetic}, {"speed", Energetic},
    {"energy", Energetic}, {"intense", Energetic}, {"uptempo", Energetic}, {"metal", Energetic},
    {"party", Dance}, {"dance", Dance}, {"dancing", Dance}, {"club", Dance},
    {"happy", Happy}, {"joy", Happy}, {"euphoria", Happy}, {"ecstatic", Happy},
    {"cheerful", Happy},
    {"sad", Sad}, {"anxiety", Sad}, {"fear", Sad}, {"gloomy", Sad}, {"depressed", Sad},
    {"depression", Sad}, {"depressive", Sad}, {"melancholic", Sad}, {"miserable", Sad},
    {"misery", Sad},
    {"love", Romantic}, {"love songs", Romantic}, {"affectionate", Romantic},
    {"romantic", Romantic},
    {"sensual", Seductive}, {"seductive", Seductive}, {"naughty", Seductive},
    {"erotic", Seductive}, {"sexy", Seductive},
    {"hope", Hopeful}, {"hopeful", Hopeful}, {"inspirational", Hopeful},
    {"up-lifting", Hopeful}, {"inspiring", Hopeful}, {"lifting", Hopeful},
    {"angry", Angry}, {"anger", Angry}, {"rage", Angry}, {"aggression", Angry},
    {"aggressive", Angry}, {"hate", Angry},
};

// Row = assigned class, entries = tag-derived classes that contradict it.
// The Angry row as printed also lists Angry itself; that entry is dropped.
constexpr std::array<MoodSet, kMoodClassCount> kConflicts = {
    MoodSet{Energetic, Dance},             // Calm
    MoodSet{Calm},                         // Energetic
    MoodSet{Sad, Calm, Angry, Hopeful},    // Dance
    MoodSet{Sad, Angry},                   // Happy
    MoodSet{Happy, Dance, Seductive},      // Sad
    MoodSet{Angry},                        // Romantic
    MoodSet{Sad, Angry},                   // Seductive
    MoodSet{Dance, Angry},                 // Hopeful
    MoodSet{Happy, Romantic},              // Angry
};

std::string format_percent(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  return buf;
}

}  // namespace

std::span<const std::pair<std::string_view, MoodClass>> mood_tag_table() { return kMoodTags; }

MoodSet map_tags_to_classes(std::span<const Tag> tags, int min_weight) {
  MoodSet out;
  for (const auto& tag : tags) {
    if (tag.weight < min_weight) continue;
    const auto name = text::to_lower(text::trim(tag.name));
    for (const auto& [tag_name, cls] : kMoodTags) {
      if (name == tag_name) {
        out.insert(cls);
        break;
      }
    }
  }
  return out;
}

MoodSet conflict_row(MoodClass assigned) { return kConflicts[static_cast<std::size_t>(assigned)]; }

bool conflicts(MoodClass assigned, MoodClass tagged, bool symmetrize) {
  if (conflict_row(assigned).contains(tagged)) return true;
  return symmetrize && conflict_row(tagged).contains(assigned);
}

std::string SongRecord::id() const { return artist + " - " + title; }

namespace {

std::string fold_spaces(std::string_view s) {
  std::string out;
  bool gap = false;
  for (char c : text::trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = true;
      continue;
    }
    if (gap) out.push_back(' ');
    gap = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string record_key(std::string_view artist, std::string_view title) {
  return fold_spaces(artist) + "\x1f" + fold_spaces(title);
}

nlohmann::json to_json(const SongRecord& r) {
  nlohmann::json tags = nlohmann::json::array();
  for (const auto& t : r.tags) tags.push_back({{"name", t.name}, {"weight", t.weight}});
  nlohmann::json j = {{"artist", r.artist}, {"title", r.title}, {"tags", tags},
                      {"classes", to_json(r.classes)}};
  if (r.audio) j["audio"] = to_json(*r.audio);
  if (!r.lyrics.empty()) j["lyrics"] = r.lyrics;
  if (r.vector) j["vector"] = to_json(*r.vector);
  return j;
}

SongRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("song record must be a JSON object");
  SongRecord r;
  try {
    r.artist = j.at("artist").get<std::string>();
    r.title = j.at("title").get<std::string>();
    if (j.contains("tags")) {
      for (const auto& t : j["tags"]) {
        r.tags.push_back({t.at("name").get<std::string>(), t.at("weight").get<int>()});
      }
    }
    if (j.contains("audio") && !j["audio"].is_null()) r.audio = audio_from_json(j["audio"]);
    r.lyrics = j.value("lyrics", "");
    if (j.contains("classes")) r.classes = mood_set_from_json(j["classes"]);
    if (j.contains("vector") && !j["vector"].is_null()) {
      r.vector = feature_vector_from_json(j["vector"]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("song record: ") + e.what());
  }
  return r;
}

std::vector<SongRecord> read_records(std::istream& in, const std::string& name) {
  std::vector<SongRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(name, line_no, e.what());
    } catch (const DataError& e) {
      throw LoadError(name, line_no, e.what());
    }
  }
  return records;
}

std::vector<SongRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return read_records(in, path);
}

void write_records(std::ostream& out, std::span<const SongRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<SongRecord> dedupe_records(std::vector<SongRecord> records,
                                       std::vector<std::string>* dropped) {
  std::set<std::string> seen;
  std::vector<SongRecord> kept;
  kept.reserve(records.size());
  for (auto& r : records) {
    if (seen.insert(record_key(r.artist, r.title)).second) {
      kept.push_back(std::move(r));
    } else if (dropped != nullptr) {
      dropped->push_back(r.id());
    }
  }
  return kept;
}

void require_unique(std::span<const SongRecord> records) {
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (!seen.insert(record_key(r.artist, r.title)).second) {
      throw DataError("duplicate song '" + r.id() + "'");
    }
  }
}

std::vector<Fold> stratified_partition(std::span<const SongRecord> records, std::size_t folds,
                                       std::uint64_t seed) {
  if (folds == 0) throw PartitionError("fold count must be positive");
  if (records.size() < folds) {
    throw PartitionError("need at least " + std::to_string(folds) + " records, got " +
                         std::to_string(records.size()));
  }
  std::array<std::size_t, kMoodClassCount> class_size{};
  for (const auto& r : records) {
    if (r.classes.empty()) throw PartitionError("song '" + r.id() + "' has no class");
    for (auto c : r.classes.to_vector()) ++class_size[static_cast<std::size_t>(c)];
  }

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span(order));

  std::vector<std::array<std::size_t, kMoodClassCount>> per_fold(folds);
  std::vector<std::size_t> fold_size(folds, 0);
  std::vector<std::size_t> assignment(records.size());

  for (std::size_t idx : order) {
    const auto classes = records[idx].classes.to_vector();
    const MoodClass rarest = *std::min_element(
        classes.begin(), classes.end(), [&](MoodClass a, MoodClass b) {
          return class_size[static_cast<std::size_t>(a)] < class_size[static_cast<std::size_t>(b)];
        });
    const auto ci = static_cast<std::size_t>(rarest);
    std::size_t best = 0;
    for (std::size_t f = 1; f < folds; ++f) {
      if (per_fold[f][ci] < per_fold[best][ci] ||
          (per_fold[f][ci] == per_fold[best][ci] && fold_size[f] < fold_size[best])) {
        best = f;
      }
    }
    assignment[idx] = best;
    ++fold_size[best];
    for (auto c : classes) ++per_fold[best][static_cast<std::size_t>(c)];
  }

  std::vector<Fold> out(folds);
  for (std::size_t f = 0; f < folds; ++f) out[f].index = f + 1;
  for (std::size_t i = 0; i < records.size(); ++i) out[assignment[i]].records.push_back(records[i]);
  return out;
}

bool is_correct(MoodSet assigned, MoodSet truth, bool symmetrize) {
  for (auto a : assigned.to_vector()) {
    for (auto t : truth.to_vector()) {
      if (conflicts(a, t, symmetrize)) return false;
    }
  }
  return true;
}

double SetEvaluation::accuracy_percent() const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct()) / static_cast<double>(total);
}

SetEvaluation evaluate(const SongClasses& predictions, const SongClasses& truth, bool symmetrize,
                       std::string name) {
  SetEvaluation eval;
  eval.name = std::move(name);
  for (const auto& [song, tagged] : truth) {
    if (tagged.empty()) {
      eval.excluded.push_back(song);
      continue;
    }
    auto it = predictions.find(song);
    if (it == predictions.end()) throw DataError("no prediction for song '" + song + "'");
    ++eval.total;
    if (!is_correct(it->second, tagged, symmetrize)) ++eval.incorrect;
  }
  return eval;
}

SetEvaluation AccuracyReport::total() const {
  SetEvaluation all;
  all.name = "All";
  for (const auto& s : sets) {
    all.total += s.total;
    all.incorrect += s.incorrect;
    all.excluded.insert(all.excluded.end(), s.excluded.begin(), s.excluded.end());
  }
  return all;
}

nlohmann::json AccuracyReport::to_json() const {
  auto row = [](const SetEvaluation& s) {
    return nlohmann::json{{"set", s.name},
                          {"total", s.total},
                          {"incorrect", s.incorrect},
                          {"correct", s.correct()},
                          {"accuracy", std::stod(format_percent(s.accuracy_percent()))},
                          {"excluded", s.excluded}};
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : sets) rows.push_back(row(s));
  return {{"sets", rows}, {"total", row(total())}};
}

std::string AccuracyReport::format_table() const {
  std::vector<std::array<std::string, 5>> lines;
  lines.push_back({"Set", "Total", "Incorrect", "Correct", "Accuracy (%)"});
  auto add = [&](const SetEvaluation& s) {
    lines.push_back({s.name, std::to_string(s.total), std::to_string(s.incorrect),
                     std::to_string(s.correct()), format_percent(s.accuracy_percent())});
  };
  for (const auto& s : sets) add(s);
  add(total());

  std::array<std::size_t, 5> width{};
  for (const auto& l : lines) {
    for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], l[c].size());
  }
  std::ostringstream out;
  for (const auto& l : lines) {
    out << l[0] << std::string(width[0] - l[0].size(), ' ');
    for (std::size_t c = 1; c < 5; ++c) {
      out << "  " << std::string(width[c] - l[c].size(), ' ') << l[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace moodloom
