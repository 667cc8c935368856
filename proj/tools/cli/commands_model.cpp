#include <filesystem>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace fs = std::filesystem;

namespace moodloom::cli {
namespace {

nlohmann::json parse_json_file(const std::string& path) {
  const auto body = text::read_file(path);
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string parent_dir(const std::string& path) {
  return fs::absolute(path).parent_path().string();
}

TrainedModel load_model(const std::string& path) {
  try {
    return TrainedModel::from_json(parse_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(path + ": " + e.what());
  }
}

KnnParams apply_overrides(KnnParams p, const KnnOverrides& o) {
  if (o.k) p.k = *o.k;
  if (o.threshold) p.threshold = *o.threshold;
  if (!o.weights.empty()) p.weights = parse_weights(o.weights);
  return p;
}

/// Model analysis settings fill whatever the command line left unset.
RunConfig with_model_analysis(RunConfig rc, const AnalysisSettings& a, bool lexicon_given,
                              bool tags_given) {
  if (!lexicon_given && !a.lexicon_path.empty() && fs::exists(a.lexicon_path)) {
    rc.lexicon_path = a.lexicon_path;
  }
  if (!tags_given && !a.tag_lexicon_path.empty() && fs::exists(a.tag_lexicon_path)) {
    rc.tag_lexicon_path = a.tag_lexicon_path;
  }
  rc.chorus_weight = a.chorus_weight;
  rc.verse_weight = a.verse_weight;
  rc.alpha = a.verb_dominance;
  return rc;
}

std::string weights_text(const FeatureWeights& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += format_double(w[i], 2);
  }
  return s;
}

std::string report_text(const AccuracyReport& report, bool json) {
  return json ? report.to_json().dump(2) + "\n" : report.format_table();
}

}  // namespace

std::vector<SongRecord> load_records_with_features(const std::string& path, const RunConfig& rc) {
  auto records = read_records(path);
  std::optional<LyricAnalyzer> analyzer;
  const auto base = parent_dir(path);
  for (auto& r : records) {
    if (r.vector) continue;
    if (!analyzer) analyzer = rc.load_analyzer();
    r.vector = compute_features(r, *analyzer, base);
  }
  return records;
}

int train(const RunConfig& rc, const TrainOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<SongRecord> training;
  for (const auto& path : o.inputs) {
    for (auto& r : load_records_with_features(path, rc)) {
      if (r.classes.empty()) {
        err << "skipping '" << r.id() << "': no mood class\n";
        continue;
      }
      training.push_back(std::move(r));
    }
  }
  auto analysis = rc.analysis();
  analysis.lexicon_path = fs::absolute(analysis.lexicon_path).lexically_normal().string();
  analysis.tag_lexicon_path = fs::absolute(analysis.tag_lexicon_path).lexically_normal().string();
  const auto model = train_model(training, rc.knn(), analysis);
  write_output(o.out, model.to_json().dump() + "\n", out);
  err << "trained on " << training.size() << " songs (k=" << model.params().k
      << ", threshold=" << model.params().threshold << ")\n";
  return 0;
}

int classify(const RunConfig& rc_in, const ClassifyOptions& o, std::ostream& out, std::ostream&) {
  auto model = load_model(o.model);
  model = model.with_params(apply_overrides(model.params(), o.overrides));

  const auto song_json = parse_json_file(o.song);
  SongRecord song;
  try {
    song = record_from_json(song_json);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(o.song + ": " + e.what());
  }
  FeatureVector features;
  if (!song.lyrics.empty() || !song.vector) {
    const auto rc = with_model_analysis(rc_in, model.analysis(), !rc_in.lexicon_path.empty(),
                                        !rc_in.tag_lexicon_path.empty());
    RunConfig resolved = rc;
    resolve_resources(resolved);
    features = compute_features(song, resolved.load_analyzer(), parent_dir(o.song));
  } else {
    features = *song.vector;
  }

  const auto result = predict(model, features);
  auto j = to_json(result);
  j["song"] = song.id();
  nlohmann::json f = nlohmann::json::object();
  for (std::size_t i = 0; i < kFeatureCount; ++i) f[std::string(kFeatureNames[i])] = features[i];
  j["features"] = f;
  out << j.dump(2) << "\n";
  return 0;
}

int evaluate(const RunConfig& rc, const EvaluateOptions& o, std::ostream& out, std::ostream&) {
  AccuracyReport report;
  if (!o.cv.empty()) {
    if (!o.model.empty() || !o.test.empty()) throw ConfigError("--cv excludes --model/--test");
    RunConfig resolved = rc;
    resolve_resources(resolved);
    std::vector<Fold> folds;
    for (std::size_t i = 0; i < o.cv.size(); ++i) {
      folds.push_back({i + 1, load_records_with_features(o.cv[i], resolved)});
    }
    report = cross_validate(folds, apply_overrides(rc.knn(), o.overrides), rc.symmetrize);
  } else {
    if (o.model.empty() || o.test.empty()) throw ConfigError("evaluate needs --model and --test, or --cv");
    auto model = load_model(o.model);
    model = model.with_params(apply_overrides(model.params(), o.overrides));
    auto settings = with_model_analysis(rc, model.analysis(), !rc.lexicon_path.empty(),
                                        !rc.tag_lexicon_path.empty());
    resolve_resources(settings);
    const auto test = load_records_with_features(o.test, settings);
    report.sets.push_back(
        evaluate_records(model, test, rc.symmetrize, fs::path(o.test).stem().string()));
  }
  write_output(o.out, report_text(report, o.json), out);
  return 0;
}

int sweep(const RunConfig& rc, const SweepOptions& o, std::ostream& out, std::ostream&) {
  const auto records = load_records_with_features(o.input, rc);
  const auto folds = stratified_partition(records, o.folds, rc.seed);
  const auto base = rc.knn();

  std::vector<std::pair<std::string, FeatureWeights>> variants{{"base", base.weights}};
  for (const auto& spec : o.vary) {
    const auto eq = spec.find('=');
    const auto feature = eq == std::string::npos ? std::nullopt : parse_feature(spec.substr(0, eq));
    if (!feature) throw ConfigError("--vary expects FEATURE=v1,v2,... (got '" + spec + "')");
    for (const auto& value : text::split(spec.substr(eq + 1), ',')) {
      auto w = base.weights;
      try {
        w[static_cast<std::size_t>(*feature)] = std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError("--vary: bad weight '" + value + "'");
      }
      variants.emplace_back(spec.substr(0, eq) + "=" + value, w);
    }
  }

  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream table;
  table << "k     threshold  variant               weights                          accuracy(%)\n";
  for (auto k : o.k_values) {
    for (auto t : o.thresholds) {
      if (t > k) continue;
      for (const auto& [name, w] : variants) {
        KnnParams p{k, t, w};
        validate(p);
        const auto total = cross_validate(folds, p, rc.symmetrize).total();
        rows.push_back({{"k", k},
                        {"threshold", t},
                        {"variant", name},
                        {"weights", w},
                        {"total", total.total},
                        {"incorrect", total.incorrect},
                        {"accuracy", total.accuracy_percent()}});
        char line[160];
        std::snprintf(line, sizeof line, "%-5zu %-10zu %-21s %-32s %.2f\n", k, t, name.c_str(),
                      weights_text(w).c_str(), total.accuracy_percent());
        table << line;
      }
    }
  }
  write_output(o.out, o.json ? rows.dump(2) + "\n" : table.str(), out);
  return 0;
}

}  // namespace moodloom::cli
