#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "moodloom/error.hpp"

namespace moodloom::cli {
namespace {

void add_analysis_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--lexicon", rc.lexicon_path, "Affect lexicon CSV (0-10 scale)");
  cmd->add_option("--tag-lexicon", rc.tag_lexicon_path, "POS tag lexicon (word<TAB>TAG)");
  cmd->add_option("--chorus-weight", rc.chorus_weight, "Sentence weight inside a chorus")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--verse-weight", rc.verse_weight, "Sentence weight outside a chorus")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", rc.alpha, "Verb dominance in a sentence score")->check(CLI::Range(0.0, 1.0));
}

void add_knn_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--k", rc.k, "Neighbors considered")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", rc.threshold, "Minimum neighbor count per class")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--weights", rc.weights,
                  "Seven feature weights: danceability,loudness,valence,bpm,energy,mode,arousal")
      ->delimiter(',')
      ->expected(static_cast<int>(kFeatureCount));
}

void add_override_flags(CLI::App* cmd, KnnOverrides& o) {
  cmd->add_option("--k", o.k, "Override the model's k")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", o.threshold, "Override the model's threshold")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--weights", o.weights, "Override the model's seven feature weights")
      ->delimiter(',')
      ->expected(static_cast<int>(kFeatureCount));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mood classification of songs from lyrics and audio features", "moodloom"};
  app.set_version_flag("--version", MOODLOOM_VERSION);
  app.require_subcommand(1);

  RunConfig rc;
  app.add_option("--jobs", rc.jobs, "Worker threads for per-song work")->check(CLI::PositiveNumber);

  std::function<int()> action;
  bool resolve = true;
  auto bind = [&](CLI::App* cmd, std::function<int()> fn, bool needs_resources = true) {
    cmd->callback([&action, &resolve, fn = std::move(fn), needs_resources] {
      action = fn;
      resolve = needs_resources;
    });
  };

  auto* lexicon = app.add_subcommand("lexicon", "Affect lexicon tools");
  lexicon->require_subcommand(1);
  LexiconBuildOptions lexicon_opts;
  auto* lexicon_build_cmd =
      lexicon->add_subcommand("build", "Merge, rescale and synonym-expand the source lexicons");
  lexicon_build_cmd->add_option("--core", lexicon_opts.core, "Primary lexicon CSV (wins collisions)");
  lexicon_build_cmd->add_option("--extended", lexicon_opts.extended, "Secondary lexicon CSV");
  lexicon_build_cmd->add_option("--synonyms", lexicon_opts.synonyms, "Synonym map TSV");
  lexicon_build_cmd->add_option("--core-scale", lexicon_opts.core_scale, "Native LOW,HIGH of --core")
      ->delimiter(',')
      ->expected(2);
  lexicon_build_cmd
      ->add_option("--extended-scale", lexicon_opts.extended_scale, "Native LOW,HIGH of --extended")
      ->delimiter(',')
      ->expected(2);
  lexicon_build_cmd->add_option("--out", lexicon_opts.out, "Output CSV (default stdout)");
  bind(lexicon_build_cmd, [&] { return lexicon_build(lexicon_opts, out, err); }, false);

  AnalyzeOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "Score lyrics on valence and arousal");
  analyze_cmd->add_option("--lyrics", analyze_opts.lyrics, "Lyrics text file")->required();
  add_analysis_flags(analyze_cmd, rc);
  bind(analyze_cmd, [&] { return analyze(rc, analyze_opts, out, err); });

  FetchOptions fetch_opts;
  auto* fetch_cmd = app.add_subcommand("fetch", "Collect songs and their social tags");
  fetch_cmd->add_option("--tags", fetch_opts.tags_file, "Seed tags, one per line")->required();
  fetch_cmd->add_option("--limit", fetch_opts.limit, "Top tracks per seed tag");
  fetch_cmd->add_option("--tag-limit", fetch_opts.tag_limit, "Top tags per track");
  fetch_cmd->add_option("--min-weight", rc.min_tag_weight, "Ignore tags below this weight");
  fetch_cmd->add_option("--fixture-dir", fetch_opts.fixture_dir,
                        "Serve canned responses from this directory instead of the network");
  fetch_cmd->add_option("--base-url", fetch_opts.base_url, "Tag service root (http only)");
  fetch_cmd->add_option("--rate", fetch_opts.rate, "Requests per second")->check(CLI::PositiveNumber);
  fetch_cmd->add_option("--out", fetch_opts.out, "Output JSON Lines (default stdout)");
  bind(fetch_cmd, [&] { return fetch(rc, fetch_opts, out, err); }, false);

  auto* dataset = app.add_subcommand("dataset", "Dataset construction");
  dataset->require_subcommand(1);

  DatasetBuildOptions build_opts;
  auto* build_cmd = dataset->add_subcommand("build", "Attach audio and lyric features to fetched songs");
  build_cmd->add_option("--in", build_opts.input, "Records from `fetch`")->required();
  build_cmd->add_option("--audio-dir", build_opts.audio_dir, "<artist>__<title>.json audio files")
      ->required();
  build_cmd->add_option("--lyrics-dir", build_opts.lyrics_dir, "<artist>__<title>.txt lyric files")
      ->required();
  build_cmd->add_option("--min-weight", rc.min_tag_weight, "Ignore tags below this weight");
  build_cmd->add_option("--out", build_opts.out, "Output JSON Lines (default stdout)");
  add_analysis_flags(build_cmd, rc);
  bind(build_cmd, [&] { return dataset_build(rc, build_opts, out, err); });

  SplitOptions split_opts;
  auto* split_cmd = dataset->add_subcommand("split", "Stratified partition into folds");
  split_cmd->add_option("--in", split_opts.input, "Dataset JSON Lines")->required();
  split_cmd->add_option("--folds", split_opts.folds, "Number of folds")->check(CLI::PositiveNumber);
  split_cmd->add_option("--seed", rc.seed, "Shuffle seed");
  split_cmd->add_option("--out-dir", split_opts.out_dir, "Directory for fold<N>.jsonl")->required();
  bind(split_cmd, [&] { return dataset_split(rc, split_opts, out, err); }, false);

  SynthOptions synth_opts;
  auto* synth_cmd = dataset->add_subcommand("synth", "Generate class-conditioned synthetic songs");
  synth_cmd->add_option("--songs", synth_opts.songs, "Number of songs")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--spread", synth_opts.spread, "Cluster standard deviation (fraction of range)")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--secondary-rate", synth_opts.secondary_rate,
                        "Probability of a second class")
      ->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--seed", rc.seed, "Generator seed");
  synth_cmd->add_option("--out", synth_opts.out, "Output JSON Lines (default stdout)");
  bind(synth_cmd, [&] { return dataset_synth(rc, synth_opts, out, err); }, false);

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "Fit scaling and store a kNN model");
  train_cmd->add_option("--in", train_opts.inputs, "Training JSON Lines (repeatable)")->required();
  train_cmd->add_option("--out", train_opts.out, "Model JSON (default stdout)");
  add_knn_flags(train_cmd, rc);
  add_analysis_flags(train_cmd, rc);
  bind(train_cmd, [&] { return train(rc, train_opts, out, err); });

  ClassifyOptions classify_opts;
  auto* classify_cmd = app.add_subcommand("classify", "Assign mood classes to one song");
  classify_cmd->add_option("--model", classify_opts.model, "Model from `train`")->required();
  classify_cmd->add_option("--song", classify_opts.song, "Song record JSON")->required();
  classify_cmd->add_option("--lexicon", rc.lexicon_path, "Override the model's affect lexicon");
  classify_cmd->add_option("--tag-lexicon", rc.tag_lexicon_path, "Override the model's tag lexicon");
  add_override_flags(classify_cmd, classify_opts.overrides);
  bind(classify_cmd, [&] { return classify(rc, classify_opts, out, err); }, false);

  EvaluateOptions eval_opts;
  auto* eval_cmd = app.add_subcommand("evaluate", "Conflict-based accuracy report");
  eval_cmd->add_option("--model", eval_opts.model, "Model from `train`");
  eval_cmd->add_option("--test", eval_opts.test, "Held-out JSON Lines");
  eval_cmd->add_option("--cv", eval_opts.cv, "Fold files; each is held out in turn")->expected(2, 64);
  eval_cmd->add_option("--lexicon", rc.lexicon_path, "Affect lexicon CSV");
  eval_cmd->add_option("--tag-lexicon", rc.tag_lexicon_path, "POS tag lexicon");
  eval_cmd->add_flag("--symmetrize-conflicts", rc.symmetrize, "Close the conflict table under symmetry");
  eval_cmd->add_flag("--json", eval_opts.json, "JSON instead of a text table");
  eval_cmd->add_option("--out", eval_opts.out, "Report file (default stdout)");
  add_override_flags(eval_cmd, eval_opts.overrides);
  bind(eval_cmd, [&] { return evaluate(rc, eval_opts, out, err); }, false);

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Cross-validated accuracy over parameter grids");
  sweep_cmd->add_option("--in", sweep_opts.input, "Dataset JSON Lines")->required();
  sweep_cmd->add_option("--folds", sweep_opts.folds, "Number of folds")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", rc.seed, "Partition seed");
  sweep_cmd->add_option("--k-values", sweep_opts.k_values, "k grid")->delimiter(',');
  sweep_cmd->add_option("--thresholds", sweep_opts.thresholds, "Threshold grid")->delimiter(',');
  sweep_cmd->add_option("--vary", sweep_opts.vary, "FEATURE=v1,v2,... one weight at a time (repeatable)");
  sweep_cmd->add_option("--weights", rc.weights, "Base feature weights")
      ->delimiter(',')
      ->expected(static_cast<int>(kFeatureCount));
  sweep_cmd->add_flag("--symmetrize-conflicts", rc.symmetrize, "Close the conflict table under symmetry");
  sweep_cmd->add_flag("--json", sweep_opts.json, "JSON instead of a text table");
  sweep_cmd->add_option("--out", sweep_opts.out, "Output file (default stdout)");
  add_analysis_flags(sweep_cmd, rc);
  bind(sweep_cmd, [&] { return sweep(rc, sweep_opts, out, err); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (resolve) resolve_resources(rc);
    return action();
  } catch (const ConfigError& e) {
    err << "moodloom: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FetchError& e) {
    err << "moodloom: fetch failed: " << e.what() << "\n";
    return kExitFetch;
  } catch (const Error& e) {
    err << "moodloom: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "moodloom: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    err << "moodloom: malformed JSON: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace moodloom::cli
