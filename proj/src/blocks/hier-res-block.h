// src/blocks/hier-res-block.h

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

#ifndef DKSV_BLOCKS_HIER_RES_BLOCK_H_
#define DKSV_BLOCKS_HIER_RES_BLOCK_H_

#include <cstddef>
#include <string>
#include <vector>

#include "blocks/dconv-block.h"
#include "blocks/se-block.h"

namespace dksv {

struct HierResOptions {
  std::size_t channels = 0;
  std::size_t scale = 8;  // number of channel groups
  std::size_t kernel_size = 3;
  std::size_t dilation = 1;
  std::size_t num_kernels = 4;
  std::size_t se_reduction = 8;
  double temperature = 1.0;
  BatchNormOptions bn;
};

/// Channels are split into `scale` groups g_1..g_s. The first group passes
/// through, y_i = dconv_i(g_i + y_{i-1}) for the rest; the concatenation goes
/// through SE and is added to the input. With scale 1 the single group is
/// convolved: y_1 = dconv_1(g_1).
class HierResBlock {
 public:
  HierResBlock() = default;
  explicit HierResBlock(const HierResOptions& opts);

  void Init(Rng& rng);
  Tensor Forward(const Tensor& x, bool training) const;
  void Collect(const std::string& prefix, NamedState& out) const;
  std::size_t Flops(std::size_t T) const;
  void set_temperature(double tau);

  std::size_t channels() const { return opts_.channels; }
  std::size_t scale() const { return opts_.scale; }

  std::vector<DconvBlock> convs;  // scale - 1 entries, or 1 when scale == 1
  SeBlock se;

 private:
  HierResOptions opts_;
};

}  // namespace dksv

#endif  // DKSV_BLOCKS_HIER_RES_BLOCK_H_
