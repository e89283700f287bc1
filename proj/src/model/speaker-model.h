// src/model/speaker-model.h

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

#ifndef DKSV_MODEL_SPEAKER_MODEL_H_
#define DKSV_MODEL_SPEAKER_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blocks/attentive-pool.h"
#include "blocks/dconv-block.h"
#include "blocks/hier-res-block.h"
#include "blocks/layer-state.h"
#include "model/model-config.h"
#include "numerics/batch-norm.h"

namespace dksv {

inline constexpr std::size_t kMinEmbedFrames = 20;

struct SpeakerEmbedding {
  std::string utterance_id;
  std::vector<double> vector;
  double l2_norm = 0.0;
};

/// Frame-level dconv stack, multi-layer aggregation, attentive statistics
/// pooling and the embedding projection.
class SpeakerModel {
 public:
  /// All parameters zero; call Init or load a checkpoint.
  explicit SpeakerModel(const ModelConfig& cfg);

  void Init(std::uint64_t seed);

  /// feats [B x n_mels x T] -> embeddings [B x embedding_dim].
  Tensor Forward(const Tensor& feats, bool training) const;

  /// Inference-mode embedding of one utterance [n_mels x T], T >= 20.
  SpeakerEmbedding Embed(const Tensor& feats, const std::string& utterance_id = "") const;

  /// Parameter and buffer handles under the checkpoint path convention.
  NamedState State() const;

  std::size_t Flops(std::size_t frames) const;
  void set_temperature(double tau);
  const ModelConfig& config() const { return cfg_; }

  DconvBlock stem;
  std::vector<HierResBlock> blocks;
  DconvBlock mfa;
  AttentivePool pool;
  BatchNorm pool_bn;
  Linear embed;

 private:
  ModelConfig cfg_;
};

/// Validates cfg and returns a seeded model.
SpeakerModel BuildModel(const ModelConfig& cfg, std::uint64_t seed);

/// Trainable scalars of the embedding extractor (classifier head excluded).
std::size_t CountParams(const SpeakerModel& model);
/// Multiply-adds of one forward pass over `frames` frames.
std::size_t CountFlops(const SpeakerModel& model, std::size_t frames = 300);

}  // namespace dksv

#endif  // DKSV_MODEL_SPEAKER_MODEL_H_
