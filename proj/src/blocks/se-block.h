// src/blocks/se-block.h

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

#ifndef DKSV_BLOCKS_SE_BLOCK_H_
#define DKSV_BLOCKS_SE_BLOCK_H_

#include <cstddef>
#include <string>

#include "blocks/layer-state.h"
#include "numerics/tensor.h"

namespace dksv {

/// Squeeze-and-excitation: x * sigmoid(fc2(relu(fc1(mean_t x)))) per channel.
class SeBlock {
 public:
  SeBlock() = default;
  /// Bottleneck width channels / reduction; must be at least 1.
  SeBlock(std::size_t channels, std::size_t reduction);

  void Init(Rng& rng);
  /// Gate [B x C] in (0, 1).
  Tensor Gate(const Tensor& x) const;
  Tensor Forward(const Tensor& x) const;
  void Collect(const std::string& prefix, NamedState& out) const;
  std::size_t Flops() const;

  Linear fc1;
  Linear fc2;
};

}  // namespace dksv

#endif  // DKSV_BLOCKS_SE_BLOCK_H_
