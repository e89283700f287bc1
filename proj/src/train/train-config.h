// src/train/train-config.h

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

#ifndef DKSV_TRAIN_TRAIN_CONFIG_H_
#define DKSV_TRAIN_TRAIN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "frontend/augment.h"

namespace dksv {

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 64;
  double lr_start = 1e-8;
  double lr_peak = 1e-3;
  double lr_increment = 2e-6;  // per optimizer step
  std::uint64_t seed = 1;
  AugmentSpec augment;
  double augment_prob = 0.6;      // per utterance per step
  std::size_t checkpoint_every = 1;  // epochs; 0 disables periodic checkpoints
  // Kernel-attention temperature ramps linearly from 30 to 1 over this many
  // epochs; 0 keeps the model's temperature.
  std::size_t temperature_anneal_epochs = 0;
  std::string out_dir;  // logs and checkpoints; empty writes nothing

  void Validate() const;
  /// Sets one field from text ("augment.freq_masks" etc.); throws
  /// ConfigError for unknown keys.
  void Set(const std::string& key, const std::string& value);
};

/// min(lr_start + step * lr_increment, lr_peak).
double LrAt(const TrainConfig& cfg, std::size_t step);

}  // namespace dksv

#endif  // DKSV_TRAIN_TRAIN_CONFIG_H_
