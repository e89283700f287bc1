// src/cli/run-config.h

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

#ifndef DKSV_CLI_RUN_CONFIG_H_
#define DKSV_CLI_RUN_CONFIG_H_

#include <string>
#include <utility>
#include <vector>

#include "eval/metrics.h"
#include "frontend/mel-features.h"
#include "model/model-config.h"
#include "train/train-config.h"

namespace dksv {

/// Merged settings of one command. Keys carry a section prefix:
/// feature.*, model.*, train.*, dcf.*.
struct RunConfig {
  FeatureConfig feature;
  ModelConfig model = Preset("dconv3");
  TrainConfig train;
  DcfParams dcf;

  /// Throws ConfigError for an unknown section or key.
  void Set(const std::string& key, const std::string& value);
  void ApplyFile(const std::string& path);
  /// Runs every section's validation and checks feature.n_mels against
  /// model.n_mels.
  void Validate() const;
  std::string Serialize() const;
};

/// Parses "key=value"; throws UsageError otherwise.
std::pair<std::string, std::string> SplitAssignment(const std::string& text);

/// defaults < preset < config file < overrides.
RunConfig LoadRunConfig(const std::string& preset, const std::string& config_file,
                        const std::vector<std::string>& overrides);

/// Throws UsageError listing the valid names.
void CheckPresetName(const std::string& name);

}  // namespace dksv

#endif  // DKSV_CLI_RUN_CONFIG_H_
