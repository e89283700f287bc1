// src/blocks/se-block.cc

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

#include "blocks/se-block.h"

#include "base/error.h"
#include "numerics/ops.h"

namespace dksv {

SeBlock::SeBlock(std::size_t channels, std::size_t reduction) {
  if (reduction == 0 || channels / reduction == 0) {
    throw ConfigError("se: bottleneck " + std::to_string(channels) + "/" +
                      std::to_string(reduction) + " must be at least 1");
  }
  fc1 = Linear(channels, channels / reduction);
  fc2 = Linear(channels / reduction, channels);
}

void SeBlock::Init(Rng& rng) {
  fc1.Init(rng);
  fc2.Init(rng);
}

Tensor SeBlock::Gate(const Tensor& x) const {
  if (x.rank() != 3 || x.dim(1) != fc1.in()) {
    throw DimensionError("se: expected [B x " + std::to_string(fc1.in()) + " x T], got " +
                         ShapeToString(x.shape()));
  }
  return Sigmoid(fc2.Forward(Relu(fc1.Forward(MeanTime(x)))));
}

Tensor SeBlock::Forward(const Tensor& x) const { return ScaleChannels(x, Gate(x)); }

void SeBlock::Collect(const std::string& prefix, NamedState& out) const {
  fc1.Collect(prefix + ".fc1", out);
  fc2.Collect(prefix + ".fc2", out);
}

std::size_t SeBlock::Flops() const {
  return fc1.in() * fc1.out() + fc2.in() * fc2.out();
}

}  // namespace dksv
