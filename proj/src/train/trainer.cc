// src/train/trainer.cc

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

#include "train/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>

#include <spdlog/spdlog.h>

#include "base/error.h"
#include "model/checkpoint.h"
#include "numerics/adam.h"
#include "numerics/kernels.h"
#include "numerics/ops.h"

namespace dksv {

namespace {

constexpr double kAnnealStartTemperature = 30.0;

std::vector<std::vector<std::size_t>> MakeBatches(const std::vector<std::size_t>& order,
                                                  std::size_t batch_size) {
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t i = 0; i < order.size(); i += batch_size) {
    const auto end = std::min(order.size(), i + batch_size);
    batches.emplace_back(order.begin() + i, order.begin() + end);
  }
  // Training-mode batch norm needs two examples.
  if (batches.size() > 1 && batches.back().size() == 1) {
    batches[batches.size() - 2].push_back(batches.back()[0]);
    batches.pop_back();
  }
  return batches;
}

// Runs body(i) for i in [0, n), in parallel in parallel kernel mode. The
// first exception is rethrown on the calling thread.
template <typename F>
void ForEach(std::size_t n, F body) {
  const bool parallel = kernels::GetKernelMode() == kernels::KernelMode::kParallel;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

TrainingSet MakeTrainingSet(std::vector<Utterance> utterances) {
  std::map<std::string, std::size_t> counts;
  for (const auto& u : utterances) ++counts[u.speaker_id];
  if (counts.size() < 2) throw InputError("training needs at least 2 speakers");
  for (const auto& [spk, n] : counts) {
    if (n < 2) throw InputError("speaker '" + spk + "' has fewer than 2 training utterances");
  }
  TrainingSet set;
  std::map<std::string, int> label_of;
  for (const auto& [spk, n] : counts) {
    label_of[spk] = static_cast<int>(set.speakers.size());
    set.speakers.push_back(spk);
  }
  for (const auto& u : utterances) set.labels.push_back(label_of[u.speaker_id]);
  set.utterances = std::move(utterances);
  return set;
}

Tensor TrainingSegment(const Utterance& utt, const Tensor& clean, const FeatureConfig& feat,
                       const TrainConfig& cfg, Rng& rng) {
  std::vector<AugmentKind> kinds;
  for (AugmentKind k : {AugmentKind::kFreqMask, AugmentKind::kTimeMask, AugmentKind::kNoise}) {
    if (cfg.augment.Enabled(k)) kinds.push_back(k);
  }
  Tensor feats = clean;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (!kinds.empty() && unit(rng) < cfg.augment_prob) {
    const AugmentKind kind =
        kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    if (kind == AugmentKind::kNoise) {
      const double snr = cfg.augment.noise_snr_db_min +
                         (cfg.augment.noise_snr_db_max - cfg.augment.noise_snr_db_min) * unit(rng);
      feats = ExtractFeatures(AddNoise(utt, snr, rng), feat);
    } else {
      AugmentSpec only = cfg.augment;
      only.enabled = static_cast<unsigned>(kind);
      only.freq_mask_max_width = std::min(only.freq_mask_max_width, feats.dim(0) - 1);
      only.time_mask_max_width = std::min(only.time_mask_max_width, feats.dim(1) - 1);
      feats = SpecAugment(feats, only, rng).feats;
    }
  }
  return CropSegment(feats, feat.segment_frames, rng);
}

void SaveTrainingCheckpoint(const std::string& path, const SpeakerModel& model,
                            const ClassifierHead& head, const std::string& extra_header) {
  NamedState state = model.State();
  head.Collect(state);
  SaveCheckpoint(path, model.config(), state,
                 "head.n_speakers=" + std::to_string(head.n_speakers()) + "\n" + extra_header);
}

TrainReport Train(SpeakerModel& model, ClassifierHead& head, const TrainingSet& data,
                  const FeatureConfig& feat, const TrainConfig& cfg) {
  cfg.Validate();
  feat.Validate();
  if (head.n_speakers() != data.speakers.size()) {
    throw ConfigError("classifier head has " + std::to_string(head.n_speakers()) +
                      " outputs for " + std::to_string(data.speakers.size()) + " speakers");
  }
  if (data.speakers.size() < 2) throw InputError("training needs at least 2 speakers");

  std::ofstream log;
  namespace fs = std::filesystem;
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    log.open(fs::path(cfg.out_dir) / "train.log", std::ios::trunc);
    if (!log) throw IoError("cannot write " + (fs::path(cfg.out_dir) / "train.log").string());
    log << "epoch,step,lr,loss,acc\n";
  }

  const std::size_t n = data.utterances.size();
  std::vector<Tensor> clean(n);
  ForEach(n, [&](std::size_t i) { clean[i] = ExtractFeatures(data.utterances[i], feat); });

  NamedState state = model.State();
  head.Collect(state);
  std::vector<Tensor> params;
  for (const auto& p : state.params) params.push_back(p.second);
  Adam adam(params);

  TrainReport report;
  std::size_t global_step = 0;
  const std::size_t M = feat.n_mels, F = feat.segment_frames;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.temperature_anneal_epochs > 0) {
      const double frac =
          std::min(1.0, static_cast<double>(epoch - 1) / cfg.temperature_anneal_epochs);
      model.set_temperature(kAnnealStartTemperature + (1.0 - kAnnealStartTemperature) * frac);
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng shuffle_rng(DeriveSeed(DeriveSeed(cfg.seed, "shuffle"), epoch));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    std::size_t correct = 0, seen = 0, steps = 0;
    for (const auto& batch : MakeBatches(order, cfg.batch_size)) {
      const std::size_t B = batch.size();
      std::vector<double> x(B * M * F);
      std::vector<int> labels(B);
      ForEach(B, [&](std::size_t j) {
        const std::size_t u = batch[j];
        Rng rng(DeriveSeed(DeriveSeed(cfg.seed, "augment:" + data.utterances[u].utterance_id),
                           global_step));
        Tensor seg = TrainingSegment(data.utterances[u], clean[u], feat, cfg, rng);
        std::copy(seg.data().begin(), seg.data().end(), x.begin() + j * M * F);
        labels[j] = data.labels[u];
      });

      Tensor logits = head.Forward(model.Forward(Tensor::FromData({B, M, F}, std::move(x)), true));
      Tensor loss = CrossEntropy(logits, labels);
      if (!std::isfinite(loss.item())) {
        std::string ids;
        for (std::size_t u : batch) ids += " " + data.utterances[u].utterance_id;
        if (!cfg.out_dir.empty()) {
          std::ofstream dump(fs::path(cfg.out_dir) / "nonfinite-batch.txt");
          dump << "epoch=" << epoch << "\nstep=" << global_step << "\nutterances=" << ids << "\n";
        }
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + " step " +
                           std::to_string(global_step) + "; batch:" + ids);
      }
      std::size_t batch_correct = 0;
      const std::size_t S = logits.dim(1);
      for (std::size_t j = 0; j < B; ++j) {
        auto row = logits.data().subspan(j * S, S);
        const auto best = std::max_element(row.begin(), row.end()) - row.begin();
        if (best == labels[j]) ++batch_correct;
      }

      adam.ZeroGrad();
      Backward(loss);
      const double lr = LrAt(cfg, global_step);
      report.skipped_updates += adam.Step(lr);

      StepRecord rec{epoch, global_step, lr, loss.item(),
                     static_cast<double>(batch_correct) / static_cast<double>(B)};
      report.steps.push_back(rec);
      if (log.is_open()) {
        log << epoch << ',' << global_step << ',' << Fmt("%.9g", lr) << ','
            << Fmt("%.9g", rec.loss) << ',' << Fmt("%.6f", rec.accuracy) << '\n';
      }
      loss_sum += rec.loss;
      correct += batch_correct;
      seen += B;
      ++steps;
      ++global_step;
    }
    EpochRecord er{epoch, steps, loss_sum / static_cast<double>(steps),
                   static_cast<double>(correct) / static_cast<double>(seen)};
    report.epochs.push_back(er);
    spdlog::info("epoch {}/{}: loss {:.4f} acc {:.4f} lr {:.3g}", epoch, cfg.epochs, er.mean_loss,
                 er.accuracy, LrAt(cfg, global_step - 1));
    if (!cfg.out_dir.empty() && cfg.checkpoint_every > 0 && epoch % cfg.checkpoint_every == 0) {
      const auto path = (fs::path(cfg.out_dir) / ("epoch-" + std::to_string(epoch) + ".ckpt")).string();
      SaveTrainingCheckpoint(path, model, head, feat.Serialize("feature."));
      report.checkpoints.push_back(path);
    }
  }

  if (!cfg.out_dir.empty()) {
    const auto final_path = (fs::path(cfg.out_dir) / "final.ckpt").string();
    SaveTrainingCheckpoint(final_path, model, head, feat.Serialize("feature."));
    report.checkpoints.push_back(final_path);
    std::ofstream summary(fs::path(cfg.out_dir) / "summary.txt", std::ios::trunc);
    summary << "model=" << model.config().name << '\n'
            << "speakers=" << data.speakers.size() << '\n'
            << "utterances=" << n << '\n'
            << "epochs=" << cfg.epochs << '\n'
            << "steps=" << global_step << '\n'
            << "skipped_updates=" << report.skipped_updates << '\n'
            << "first_loss=" << Fmt("%.9g", report.steps.front().loss) << '\n'
            << "final_loss=" << Fmt("%.9g", report.final_loss()) << '\n'
            << "final_accuracy=" << Fmt("%.6f", report.final_accuracy()) << '\n';
    for (const auto& e : report.epochs) {
      summary << "epoch." << e.epoch << "=loss:" << Fmt("%.9g", e.mean_loss)
              << ",acc:" << Fmt("%.6f", e.accuracy) << '\n';
    }
    if (!summary) throw IoError("cannot write summary.txt in " + cfg.out_dir);
  }
  return report;
}

}  // namespace dksv
