// src/blocks/attentive-pool.cc

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

#include "blocks/attentive-pool.h"

#include <cmath>

#include "base/error.h"
#include "numerics/ops.h"

namespace dksv {

AttentivePool::AttentivePool(std::size_t channels, std::size_t att_channels)
    : w1(Tensor::Zeros({att_channels, 3 * channels, 1}, true)),
      b1(Tensor::Zeros({att_channels}, true)),
      w2(Tensor::Zeros({channels, att_channels, 1}, true)),
      b2(Tensor::Zeros({channels}, true)) {
  if (channels == 0 || att_channels == 0) {
    throw ConfigError("attentive pool: channel counts must be positive");
  }
}

void AttentivePool::Init(Rng& rng) {
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(w1.dim(1)));
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(w2.dim(1)));
  FillUniform(w1, bound1, rng);
  FillUniform(b1, bound1, rng);
  FillUniform(w2, bound2, rng);
  FillUniform(b2, bound2, rng);
}

Tensor AttentivePool::Weights(const Tensor& h) const {
  if (h.rank() != 3 || h.dim(1) != channels()) {
    throw DimensionError("attentive pool: expected [B x " + std::to_string(channels()) +
                         " x T], got " + ShapeToString(h.shape()));
  }
  const std::size_t T = h.dim(2);
  if (T == 0) throw InputError("attentive pool: empty time axis");
  Tensor uniform = Tensor::Filled({T}, 1.0 / static_cast<double>(T));
  auto [mean, stddev] = WeightedMoments(h, uniform);
  Tensor context = Concat({h, BroadcastTime(mean, T), BroadcastTime(stddev, T)}, 1);
  Tensor logits = Conv1d(Tanh(Conv1d(context, w1, b1)), w2, b2);
  return Softmax(logits, 2);
}

Tensor AttentivePool::Forward(const Tensor& h) const {
  auto [mu, sigma] = WeightedMoments(h, Weights(h));
  return Concat({mu, sigma}, 1);
}

void AttentivePool::Collect(const std::string& prefix, NamedState& out) const {
  out.params.emplace_back(prefix + ".att_conv1.weight", w1);
  out.params.emplace_back(prefix + ".att_conv1.bias", b1);
  out.params.emplace_back(prefix + ".att_conv2.weight", w2);
  out.params.emplace_back(prefix + ".att_conv2.bias", b2);
}

std::size_t AttentivePool::Flops(std::size_t T) const {
  return (w1.dim(0) * w1.dim(1) + w2.dim(0) * w2.dim(1)) * T;
}

}  // namespace dksv
