// src/model/speaker-model.cc

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

#include "model/speaker-model.h"

#include <cmath>

#include "base/error.h"
#include "base/random.h"
#include "numerics/ops.h"

namespace dksv {

namespace {

DconvOptions DconvFor(const ModelConfig& cfg, std::size_t in, std::size_t out, std::size_t layer) {
  DconvOptions o;
  o.in_channels = in;
  o.out_channels = out;
  o.kernel_size = cfg.kernel_sizes[layer];
  o.dilation = cfg.dilations[layer];
  o.num_kernels = cfg.num_kernels;
  o.temperature = cfg.temperature;
  return o;
}

std::string LayerPrefix(std::size_t layer) { return "blocks." + std::to_string(layer); }

}  // namespace

SpeakerModel::SpeakerModel(const ModelConfig& cfg) : cfg_(cfg) {
  cfg.Validate();
  const std::size_t C = cfg.channels(), L = cfg.layer_channels.size();
  stem = DconvBlock(DconvFor(cfg, cfg.n_mels, C, 0));
  for (std::size_t l = 1; l + 1 < L; ++l) {
    HierResOptions o;
    o.channels = C;
    o.scale = cfg.scale;
    o.kernel_size = cfg.kernel_sizes[l];
    o.dilation = cfg.dilations[l];
    o.num_kernels = cfg.num_kernels;
    o.se_reduction = cfg.se_reduction;
    o.temperature = cfg.temperature;
    blocks.emplace_back(o);
  }
  mfa = DconvBlock(DconvFor(cfg, cfg.aggregation_width(), cfg.pooled_channels(), L - 1));
  pool = AttentivePool(cfg.pooled_channels(), cfg.att_channels);
  pool_bn = BatchNorm(2 * cfg.pooled_channels());
  embed = Linear(2 * cfg.pooled_channels(), cfg.embedding_dim);
}

void SpeakerModel::Init(std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, "model-init"));
  stem.Init(rng);
  for (auto& b : blocks) b.Init(rng);
  mfa.Init(rng);
  pool.Init(rng);
  embed.Init(rng);
}

Tensor SpeakerModel::Forward(const Tensor& feats, bool training) const {
  if (feats.rank() != 3 || feats.dim(1) != cfg_.n_mels) {
    throw DimensionError("model: expected [B x " + std::to_string(cfg_.n_mels) +
                         " x T] features, got " + ShapeToString(feats.shape()));
  }
  Tensor h = stem.Forward(feats, training);
  std::vector<Tensor> outs;
  for (const auto& b : blocks) {
    h = b.Forward(h, training);
    outs.push_back(h);
  }
  Tensor agg = outs.empty() ? h : (outs.size() == 1 ? outs[0] : Concat(outs, 1));
  Tensor pooled = pool.Forward(mfa.Forward(agg, training));
  return embed.Forward(pool_bn.Forward(pooled, training));
}

SpeakerEmbedding SpeakerModel::Embed(const Tensor& feats, const std::string& utterance_id) const {
  if (feats.rank() != 2 || feats.dim(0) != cfg_.n_mels) {
    throw DimensionError("embed: expected [" + std::to_string(cfg_.n_mels) + " x T], got " +
                         ShapeToString(feats.shape()));
  }
  if (feats.dim(1) < kMinEmbedFrames) {
    throw InputError("embed: utterance '" + utterance_id + "' has " +
                     std::to_string(feats.dim(1)) + " frames, need at least " +
                     std::to_string(kMinEmbedFrames));
  }
  NoGradGuard no_grad;
  Tensor e = Forward(Reshape(feats, {1, feats.dim(0), feats.dim(1)}), false);
  SpeakerEmbedding out;
  out.utterance_id = utterance_id;
  out.vector.assign(e.data().begin(), e.data().end());
  double sq = 0.0;
  for (double v : out.vector) {
    if (!std::isfinite(v)) {
      throw NumericError("embed: non-finite embedding for '" + utterance_id + "'");
    }
    sq += v * v;
  }
  out.l2_norm = std::sqrt(sq);
  return out;
}

NamedState SpeakerModel::State() const {
  NamedState st;
  stem.Collect(LayerPrefix(0) + ".0", st);
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i].Collect(LayerPrefix(i + 1), st);
  mfa.Collect(LayerPrefix(blocks.size() + 1) + ".0", st);
  pool.Collect("pool", st);
  st.AddBatchNorm("pool_bn", pool_bn);
  embed.Collect("embed", st);
  return st;
}

std::size_t SpeakerModel::Flops(std::size_t frames) const {
  std::size_t f = stem.Flops(frames) + mfa.Flops(frames) + pool.Flops(frames);
  for (const auto& b : blocks) f += b.Flops(frames);
  return f + embed.in() * embed.out();
}

void SpeakerModel::set_temperature(double tau) {
  stem.set_temperature(tau);
  for (auto& b : blocks) b.set_temperature(tau);
  mfa.set_temperature(tau);
}

SpeakerModel BuildModel(const ModelConfig& cfg, std::uint64_t seed) {
  SpeakerModel m(cfg);
  m.Init(seed);
  return m;
}

std::size_t CountParams(const SpeakerModel& model) { return model.State().NumParamScalars(); }

std::size_t CountFlops(const SpeakerModel& model, std::size_t frames) {
  return model.Flops(frames);
}

}  // namespace dksv
