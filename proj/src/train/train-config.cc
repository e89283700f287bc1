// src/train/train-config.cc

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

#include "train/train-config.h"

#include <algorithm>
#include <cmath>

#include "base/error.h"
#include "base/key-value.h"

namespace dksv {

void TrainConfig::Validate() const {
  if (epochs == 0) throw ConfigError("train: epochs must be positive");
  if (batch_size < 2) throw ConfigError("train: batch_size must be at least 2");
  if (!(lr_start >= 0.0 && lr_start <= lr_peak)) {
    throw ConfigError("train: need 0 <= lr_start <= lr_peak");
  }
  if (!(lr_increment >= 0.0) || !std::isfinite(lr_peak)) {
    throw ConfigError("train: lr_increment must be non-negative and lr_peak finite");
  }
  if (!(augment_prob >= 0.0 && augment_prob <= 1.0)) {
    throw ConfigError("train: augment_prob must lie in [0, 1]");
  }
  augment.Validate();
}

void TrainConfig::Set(const std::string& key, const std::string& value) {
  const std::string what = "train." + key;
  if (key == "epochs") {
    epochs = ParseSize(value, what);
  } else if (key == "batch_size") {
    batch_size = ParseSize(value, what);
  } else if (key == "lr_start") {
    lr_start = ParseDouble(value, what);
  } else if (key == "lr_peak") {
    lr_peak = ParseDouble(value, what);
  } else if (key == "lr_increment") {
    lr_increment = ParseDouble(value, what);
  } else if (key == "seed") {
    seed = ParseU64(value, what);
  } else if (key == "augment_prob") {
    augment_prob = ParseDouble(value, what);
  } else if (key == "checkpoint_every") {
    checkpoint_every = ParseSize(value, what);
  } else if (key == "temperature_anneal_epochs") {
    temperature_anneal_epochs = ParseSize(value, what);
  } else if (key == "augment.freq_masks") {
    augment.freq_mask_count = ParseSize(value, what);
  } else if (key == "augment.freq_mask_width") {
    augment.freq_mask_max_width = ParseSize(value, what);
  } else if (key == "augment.time_masks") {
    augment.time_mask_count = ParseSize(value, what);
  } else if (key == "augment.time_mask_width") {
    augment.time_mask_max_width = ParseSize(value, what);
  } else if (key == "augment.snr_min") {
    augment.noise_snr_db_min = ParseDouble(value, what);
  } else if (key == "augment.snr_max") {
    augment.noise_snr_db_max = ParseDouble(value, what);
  } else if (key == "augment.kinds") {
    unsigned kinds = 0;
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto comma = value.find(',', start);
      const std::string k = value.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
      if (k == "freq_mask") {
        kinds |= static_cast<unsigned>(AugmentKind::kFreqMask);
      } else if (k == "time_mask") {
        kinds |= static_cast<unsigned>(AugmentKind::kTimeMask);
      } else if (k == "noise") {
        kinds |= static_cast<unsigned>(AugmentKind::kNoise);
      } else if (k != "none" && !k.empty()) {
        throw ConfigError(what + ": unknown augmentation kind '" + k + "'");
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    augment.enabled = kinds;
  } else if (key == "out_dir") {
    out_dir = value;
  } else {
    throw ConfigError("unknown train setting '" + key + "'");
  }
}

double LrAt(const TrainConfig& cfg, std::size_t step) {
  return std::min(cfg.lr_start + static_cast<double>(step) * cfg.lr_increment, cfg.lr_peak);
}

}  // namespace dksv
