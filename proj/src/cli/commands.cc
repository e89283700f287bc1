// src/cli/commands.cc

// Copyright 2026  The dksv Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <CLI11.hpp>
#include <omp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "base/error.h"
#include "cli/data-dir.h"
#include "cli/run-config.h"
#include "eval/scoring.h"
#include "frontend/synth-corpus.h"
#include "model/checkpoint.h"
#include "numerics/kernels.h"
#include "numerics/param-archive.h"
#include "train/trainer.h"

namespace dksv {

namespace {

namespace fs = std::filesystem;

// 1211 speakers in the VoxCeleb1 development set.
constexpr std::size_t kReferenceHeadSpeakers = 1211;

struct GlobalOptions {
  int jobs = 1;
  bool quiet = false;
  bool version = false;
};

struct ConfigOptions {
  std::string config_file;
  std::vector<std::string> sets;
};

void AddConfigOptions(CLI::App* cmd, ConfigOptions& o) {
  cmd->add_option("--config", o.config_file, "key=value settings file")->check(CLI::ExistingFile);
  cmd->add_option("--set", o.sets, "override one setting, e.g. --set train.epochs=5");
}

std::string Millions(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fm", static_cast<double>(n) / 1e6);
  return buf;
}

std::string DataFile(const std::string& dir, const std::string& explicit_path,
                     const char* default_name) {
  if (!explicit_path.empty()) return explicit_path;
  if (dir.empty()) throw UsageError(std::string("need --data or an explicit path for ") + default_name);
  return (fs::path(dir) / default_name).string();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

// Feature settings recorded in the checkpoint, then the config file and
// --set overrides.
RunConfig EmbeddingConfig(const std::string& checkpoint, const ConfigOptions& co) {
  RunConfig cfg;
  for (const KeyValue& kv : ReadCheckpointExtras(checkpoint)) {
    if (kv.key.rfind("feature.", 0) == 0) cfg.Set(kv.key, kv.value);
  }
  if (!co.config_file.empty()) cfg.ApplyFile(co.config_file);
  for (const auto& s : co.sets) {
    const auto [k, v] = SplitAssignment(s);
    cfg.Set(k, v);
  }
  cfg.feature.Validate();
  cfg.dcf.Validate();
  return cfg;
}

SpeakerModel LoadForEmbedding(const std::string& checkpoint, const FeatureConfig& feat) {
  SpeakerModel model = LoadModel(checkpoint);
  if (model.config().n_mels != feat.n_mels) {
    throw ConfigError("feature.n_mels (" + std::to_string(feat.n_mels) + ") differs from the model's " +
                      std::to_string(model.config().n_mels));
  }
  return model;
}

// ---- synth ----

struct SynthArgs {
  std::size_t speakers = 20;
  std::size_t utts = 10;
  double seconds = 3.0;
  std::uint64_t seed = 1;
  std::string out;
};

int RunSynth(const SynthArgs& a, std::ostream& out) {
  if (a.speakers < 2) throw UsageError("synth: --speakers must be at least 2");
  if (a.utts < 2) throw UsageError("synth: --utts must be at least 2");
  if (!(a.seconds > 0.0)) throw UsageError("synth: --seconds must be positive");
  SynthCorpusOptions o;
  o.n_speakers = a.speakers;
  o.utts_per_speaker = a.utts;
  o.seconds = a.seconds;
  o.seed = a.seed;
  const SynthCorpus corpus = SynthesizeCorpus(o);
  WriteCorpus(a.out, corpus);
  const auto n_test = std::count(corpus.is_test.begin(), corpus.is_test.end(), true);
  out << "wrote " << corpus.utterances.size() << " utterances (" << n_test << " held out), "
      << corpus.train_trials.size() << " train trials, " << corpus.test_trials.size()
      << " test trials to " << a.out << "\n";
  return kExitOk;
}

// ---- train ----

struct TrainArgs {
  ConfigOptions config;
  std::string preset;
  std::string data;
  std::string manifest;
  std::string out;
  std::size_t epochs = 0;
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int RunTrain(const TrainArgs& a, std::ostream& out) {
  std::vector<std::string> overrides = a.config.sets;
  if (a.epochs) overrides.push_back("train.epochs=" + std::to_string(a.epochs));
  if (a.batch_size) overrides.push_back("train.batch_size=" + std::to_string(a.batch_size));
  if (a.seed_set) overrides.push_back("train.seed=" + std::to_string(a.seed));
  RunConfig cfg = LoadRunConfig(a.preset, a.config.config_file, overrides);
  cfg.train.out_dir = a.out;
  cfg.Validate();

  const TrainingSet set =
      MakeTrainingSet(LoadUtterances(ReadManifest(DataFile(a.data, a.manifest, "train-manifest.txt"))));
  spdlog::info("training {} on {} utterances of {} speakers", cfg.model.name, set.utterances.size(),
               set.speakers.size());
  SpeakerModel model = BuildModel(cfg.model, cfg.train.seed);
  ClassifierHead head(cfg.model.embedding_dim, set.speakers.size());
  Rng head_rng(DeriveSeed(cfg.train.seed, "head-init"));
  head.Init(head_rng);
  const TrainReport report = Train(model, head, set, cfg.feature, cfg.train);
  WriteText((fs::path(a.out) / "run.conf").string(), cfg.Serialize());
  out << "epochs=" << report.epochs.size() << "\n"
      << "steps=" << report.steps.size() << "\n"
      << "final_loss=" << report.final_loss() << "\n"
      << "final_accuracy=" << report.final_accuracy() << "\n"
      << "checkpoint=" << report.checkpoints.back() << "\n";
  return kExitOk;
}

// ---- embed / score / eval ----

struct ModelDataArgs {
  ConfigOptions config;
  std::string model;
  std::string data;
  std::string manifest;
  std::string trials;
  std::string out;
};

int RunEmbed(const ModelDataArgs& a, std::ostream& out) {
  const RunConfig cfg = EmbeddingConfig(a.model, a.config);
  const SpeakerModel model = LoadForEmbedding(a.model, cfg.feature);
  const auto entries = ReadManifest(DataFile(a.data, a.manifest, "manifest.txt"));
  std::vector<std::string> ids;
  if (a.trials.empty()) {
    for (const auto& e : entries) ids.push_back(e.utterance_id);
  } else {
    ids = TrialIds(ReadTrials(a.trials));
  }
  EmbedStats stats;
  const EmbeddingTable table = EmbedUtterances(model, LoadUtterances(entries), ids, cfg.feature, &stats);
  WriteEmbeddings(a.out, table);
  out << "embedded " << stats.computed << " utterances (" << stats.cache_hits
      << " cache hits) to " << a.out << "\n";
  return kExitOk;
}

std::vector<ScoredTrial> ScoreFromArgs(const ModelDataArgs& a, const std::string& embeddings,
                                       const std::vector<Trial>& trials, EmbedStats* stats) {
  if (!embeddings.empty()) return ScoreTrials(ReadEmbeddings(embeddings), trials);
  if (a.model.empty()) throw UsageError("need --embeddings, or --model with --data");
  const RunConfig cfg = EmbeddingConfig(a.model, a.config);
  const SpeakerModel model = LoadForEmbedding(a.model, cfg.feature);
  const auto utts = LoadUtterances(ReadManifest(DataFile(a.data, a.manifest, "manifest.txt")));
  return ScoreTrials(EmbedUtterances(model, utts, TrialIds(trials), cfg.feature, stats), trials);
}

int RunScore(const ModelDataArgs& a, const std::string& embeddings, std::ostream& out) {
  const auto scored = ScoreFromArgs(a, embeddings, ReadTrials(a.trials), nullptr);
  WriteScores(a.out, scored);
  out << "scored " << scored.size() << " trials to " << a.out << "\n";
  return kExitOk;
}

int RunEval(const ModelDataArgs& a, const std::string& scores, std::string det, std::ostream& out) {
  RunConfig cfg;
  if (!a.config.config_file.empty()) cfg.ApplyFile(a.config.config_file);
  for (const auto& s : a.config.sets) {
    const auto [k, v] = SplitAssignment(s);
    cfg.Set(k, v);
  }
  cfg.dcf.Validate();
  EvalReport report;
  if (!scores.empty()) {
    report = Summarize(ReadScores(scores), cfg.dcf);
  } else {
    if (a.trials.empty()) throw UsageError("eval: need --scores, or --model with --data and --trials");
    EmbedStats stats;
    report = Summarize(ScoreFromArgs(a, "", ReadTrials(a.trials), &stats), cfg.dcf);
    report.embed = stats;
  }
  if (det.empty()) det = fs::path(a.out).replace_extension(".det.csv").string();
  const std::string text = FormatReport(report);
  WriteText(a.out, text);
  WriteText(det, FormatDetCsv(report.det));
  out << text;
  return kExitOk;
}

// ---- params ----

int RunParams(const std::string& preset, std::size_t frames, std::size_t head_speakers,
              std::ostream& out) {
  CheckPresetName(preset);
  const SpeakerModel model(Preset(preset));
  const std::size_t backbone = CountParams(model);
  const std::size_t emb = model.config().embedding_dim;
  const std::size_t head = head_speakers * emb + head_speakers;
  out << "preset=" << preset << "\n"
      << "params=" << backbone << "\n"
      << "head_params=" << head << "\n"
      << "total_params=" << backbone + head << "\n"
      << "total_params_millions=" << Millions(backbone + head) << "\n"
      << "frames=" << frames << "\n"
      << "flops=" << CountFlops(model, frames) << "\n";
  return kExitOk;
}

void ConfigureRuntime(const GlobalOptions& g) {
  if (g.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (g.jobs > 1) {
    kernels::SetKernelMode(kernels::KernelMode::kParallel);
    omp_set_num_threads(g.jobs);
  } else {
    kernels::SetKernelMode(kernels::KernelMode::kReference);
  }
  auto logger = spdlog::get("dksv");
  if (!logger) logger = spdlog::stderr_color_mt("dksv");
  spdlog::set_default_logger(logger);
  spdlog::set_level(g.quiet ? spdlog::level::warn : spdlog::level::info);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Dynamic-kernel convolution speaker verification", "dksv");
  app.require_subcommand(0, 1);
  GlobalOptions g;
  app.add_option("-j,--jobs", g.jobs, "threads for feature extraction, embedding and kernels");
  app.add_flag("-q,--quiet", g.quiet, "log warnings only");
  app.add_flag("--version", g.version, "print tool and file format versions");

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "write a synthetic corpus");
  c_synth->add_option("--speakers", synth.speakers, "number of speakers")->capture_default_str();
  c_synth->add_option("--utts", synth.utts, "utterances per speaker")->capture_default_str();
  c_synth->add_option("--seconds", synth.seconds, "utterance duration")->capture_default_str();
  c_synth->add_option("--seed", synth.seed, "corpus seed")->capture_default_str();
  c_synth->add_option("--out", synth.out, "output directory")->required();

  TrainArgs train;
  auto* c_train = app.add_subcommand("train", "train a model on a corpus directory");
  AddConfigOptions(c_train, train.config);
  c_train->add_option("--preset", train.preset, "model preset");
  c_train->add_option("--data", train.data, "corpus directory");
  c_train->add_option("--manifest", train.manifest, "training manifest (default DATA/train-manifest.txt)");
  c_train->add_option("--out", train.out, "output directory")->required();
  c_train->add_option("--epochs", train.epochs, "override train.epochs");
  c_train->add_option("--batch-size", train.batch_size, "override train.batch_size");
  auto* seed_opt = c_train->add_option("--seed", train.seed, "override train.seed");

  ModelDataArgs md;
  std::string embeddings, scores, det;
  auto add_model_data = [&](CLI::App* cmd) {
    AddConfigOptions(cmd, md.config);
    cmd->add_option("--model", md.model, "checkpoint")->check(CLI::ExistingFile);
    cmd->add_option("--data", md.data, "corpus directory");
    cmd->add_option("--manifest", md.manifest, "manifest (default DATA/manifest.txt)");
  };
  auto* c_embed = app.add_subcommand("embed", "write an embedding archive");
  add_model_data(c_embed);
  c_embed->add_option("--trials", md.trials, "embed only the utterances of this trial list");
  c_embed->add_option("--out", md.out, "embedding archive")->required();

  auto* c_score = app.add_subcommand("score", "cosine-score a trial list");
  add_model_data(c_score);
  c_score->add_option("--embeddings", embeddings, "embedding archive")->check(CLI::ExistingFile);
  c_score->add_option("--trials", md.trials, "trial list")->required();
  c_score->add_option("--out", md.out, "score file")->required();

  auto* c_eval = app.add_subcommand("eval", "EER, minDCF and DET points");
  add_model_data(c_eval);
  c_eval->add_option("--scores", scores, "score file")->check(CLI::ExistingFile);
  c_eval->add_option("--trials", md.trials, "trial list (with --model)");
  c_eval->add_option("--out", md.out, "report file")->required();
  c_eval->add_option("--det", det, "DET CSV (default: report path with .det.csv)");

  std::string preset;
  std::size_t frames = 300, head_speakers = kReferenceHeadSpeakers;
  auto* c_params = app.add_subcommand("params", "parameter and FLOP counts of a preset");
  c_params->add_option("--preset", preset, "model preset")->required();
  c_params->add_option("--frames", frames, "input frames for the FLOP count")->capture_default_str();
  c_params->add_option("--head-speakers", head_speakers, "classifier outputs counted in the total")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  train.seed_set = seed_opt->count() > 0;

  try {
    if (g.version) {
      out << "dksv " << kDksvVersion << "\n"
          << "param archive format version " << kParamArchiveVersion << "\n";
      return kExitOk;
    }
    ConfigureRuntime(g);
    if (c_synth->parsed()) return RunSynth(synth, out);
    if (c_train->parsed()) return RunTrain(train, out);
    if (c_embed->parsed()) return RunEmbed(md, out);
    if (c_score->parsed()) return RunScore(md, embeddings, out);
    if (c_eval->parsed()) return RunEval(md, scores, det, out);
    if (c_params->parsed()) return RunParams(preset, frames, head_speakers, out);
    out << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "dksv: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "dksv: configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "dksv: numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "dksv: error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace dksv
