// src/model/checkpoint.h

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

#ifndef DKSV_MODEL_CHECKPOINT_H_
#define DKSV_MODEL_CHECKPOINT_H_

#include <string>
#include <vector>

#include "base/key-value.h"

#include "blocks/layer-state.h"
#include "model/model-config.h"
#include "model/speaker-model.h"

namespace dksv {

/// Writes every parameter and buffer of `state` together with the model
/// configuration and its hash. `extra_header` lines (key=value) are stored
/// verbatim after the configuration.
void SaveCheckpoint(const std::string& path, const ModelConfig& cfg, const NamedState& state,
                    const std::string& extra_header = "");
void SaveCheckpoint(const std::string& path, const SpeakerModel& model);

/// Configuration stored in a checkpoint.
ModelConfig ReadCheckpointConfig(const std::string& path);

/// Fills `state` from a checkpoint written for an identical architecture.
/// Throws ConfigError if the stored configuration hash differs from
/// cfg.Hash(), ParseError naming the parameter path for missing, misshaped
/// or truncated entries. Nothing is modified unless every entry validates.
/// Entries not named in `state` are ignored.
void LoadCheckpoint(const std::string& path, const ModelConfig& cfg, const NamedState& state);

/// Builds a model from the stored configuration and loads it.
SpeakerModel LoadModel(const std::string& path);

/// Value of `key` in the checkpoint's extra header; empty if absent.
/// Extra header lines (dotted keys) in file order.
std::vector<KeyValue> ReadCheckpointExtras(const std::string& path);

std::string CheckpointHeaderValue(const std::string& path, const std::string& key);

}  // namespace dksv

#endif  // DKSV_MODEL_CHECKPOINT_H_
