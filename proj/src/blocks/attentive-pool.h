// src/blocks/attentive-pool.h

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

#ifndef DKSV_BLOCKS_ATTENTIVE_POOL_H_
#define DKSV_BLOCKS_ATTENTIVE_POOL_H_

#include <cstddef>
#include <string>

#include "blocks/layer-state.h"
#include "numerics/tensor.h"

namespace dksv {

/// Channel- and context-dependent attentive statistics pooling.
///
/// Each frame h_t is extended with the utterance mean and standard deviation,
/// mapped through conv1x1(3C -> A), tanh, conv1x1(A -> C) to per-channel
/// logits, normalized by a softmax over time. Output is the concatenation of
/// the weighted mean and weighted standard deviation, [B x 2C].
class AttentivePool {
 public:
  AttentivePool() = default;
  AttentivePool(std::size_t channels, std::size_t att_channels = 128);

  void Init(Rng& rng);
  /// Attention weights [B x C x T]; each (b, c) row sums to 1.
  Tensor Weights(const Tensor& h) const;
  Tensor Forward(const Tensor& h) const;
  void Collect(const std::string& prefix, NamedState& out) const;
  std::size_t Flops(std::size_t T) const;

  std::size_t channels() const { return w2.dim(0); }

  Tensor w1;  // [A x 3C x 1]
  Tensor b1;  // [A]
  Tensor w2;  // [C x A x 1]
  Tensor b2;  // [C]
};

}  // namespace dksv

#endif  // DKSV_BLOCKS_ATTENTIVE_POOL_H_
