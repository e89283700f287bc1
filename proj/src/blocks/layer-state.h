// src/blocks/layer-state.h

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

#ifndef DKSV_BLOCKS_LAYER_STATE_H_
#define DKSV_BLOCKS_LAYER_STATE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "base/random.h"
#include "numerics/batch-norm.h"
#include "numerics/tensor.h"

namespace dksv {

/// Named handles onto a network's state. Parameters are shared tensor
/// handles, so writing through them updates the owning block. Buffers are
/// non-trainable values such as batch-norm running statistics.
struct NamedState {
  std::vector<std::pair<std::string, Tensor>> params;
  std::vector<std::pair<std::string, std::vector<double>*>> buffers;

  void AddBatchNorm(const std::string& prefix, const BatchNorm& bn);
  std::size_t NumParamScalars() const;
};

/// Fully connected layer, weight [out x in], bias [out].
struct Linear {
  Linear() = default;
  Linear(std::size_t in, std::size_t out);

  /// U(-1/sqrt(in), 1/sqrt(in)) for weight and bias.
  void Init(Rng& rng);
  Tensor Forward(const Tensor& x) const;
  void Collect(const std::string& prefix, NamedState& out) const;
  std::size_t in() const { return weight.dim(1); }
  std::size_t out() const { return weight.dim(0); }

  Tensor weight;
  Tensor bias;
};

void FillUniform(Tensor& t, double bound, Rng& rng);

}  // namespace dksv

#endif  // DKSV_BLOCKS_LAYER_STATE_H_
