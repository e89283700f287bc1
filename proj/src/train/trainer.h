// src/train/trainer.h

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

#ifndef DKSV_TRAIN_TRAINER_H_
#define DKSV_TRAIN_TRAINER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "base/random.h"
#include "frontend/mel-features.h"
#include "frontend/wav.h"
#include "model/speaker-model.h"
#include "train/classifier-head.h"
#include "train/train-config.h"

namespace dksv {

struct TrainingSet {
  std::vector<Utterance> utterances;
  std::vector<int> labels;            // parallel to utterances
  std::vector<std::string> speakers;  // label -> speaker id
};

/// Labels are assigned by sorted speaker id. Throws InputError unless there
/// are at least 2 speakers with at least 2 utterances each.
TrainingSet MakeTrainingSet(std::vector<Utterance> utterances);

struct StepRecord {
  std::size_t epoch = 0;
  std::size_t step = 0;
  double lr = 0.0;
  double loss = 0.0;
  double accuracy = 0.0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  std::size_t steps = 0;
  double mean_loss = 0.0;
  double accuracy = 0.0;  // over every training segment seen in the epoch
};

struct TrainReport {
  std::vector<StepRecord> steps;
  std::vector<EpochRecord> epochs;
  std::size_t skipped_updates = 0;
  std::vector<std::string> checkpoints;

  double final_accuracy() const { return epochs.empty() ? 0.0 : epochs.back().accuracy; }
  double final_loss() const { return epochs.empty() ? 0.0 : epochs.back().mean_loss; }
};

/// One training input: with probability cfg.augment_prob one enabled
/// augmentation kind is drawn uniformly and applied, then a segment of
/// feat.segment_frames is cropped. `clean` are the utterance's unaugmented
/// features.
Tensor TrainingSegment(const Utterance& utt, const Tensor& clean, const FeatureConfig& feat,
                       const TrainConfig& cfg, Rng& rng);

/// Mini-batch training of model + head with cross-entropy and Adam under the
/// ramped learning rate. Deterministic given cfg.seed. If cfg.out_dir is set,
/// writes train.log (`epoch,step,lr,loss,acc`), summary.txt and checkpoints;
/// checkpoints record `feat` as feature.* header lines.
/// Throws NumericError naming the batch's utterances on a non-finite loss.
TrainReport Train(SpeakerModel& model, ClassifierHead& head, const TrainingSet& data,
                  const FeatureConfig& feat, const TrainConfig& cfg);

/// Model + head checkpoint; the head size is recorded as head.n_speakers.
/// `extra_header` holds further dotted key=value lines.
void SaveTrainingCheckpoint(const std::string& path, const SpeakerModel& model,
                            const ClassifierHead& head, const std::string& extra_header = "");

}  // namespace dksv

#endif  // DKSV_TRAIN_TRAINER_H_
