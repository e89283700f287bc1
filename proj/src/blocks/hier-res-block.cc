// src/blocks/hier-res-block.cc

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

#include "blocks/hier-res-block.h"

#include "base/error.h"
#include "numerics/ops.h"

namespace dksv {

HierResBlock::HierResBlock(const HierResOptions& opts) : opts_(opts) {
  if (opts.scale == 0 || opts.channels % opts.scale != 0) {
    throw ConfigError("hier block: " + std::to_string(opts.channels) +
                      " channels not divisible by scale " + std::to_string(opts.scale));
  }
  const std::size_t width = opts.channels / opts.scale;
  DconvOptions d;
  d.in_channels = d.out_channels = width;
  d.kernel_size = opts.kernel_size;
  d.dilation = opts.dilation;
  d.num_kernels = opts.num_kernels;
  d.temperature = opts.temperature;
  d.bn = opts.bn;
  const std::size_t n = opts.scale == 1 ? 1 : opts.scale - 1;
  for (std::size_t i = 0; i < n; ++i) convs.emplace_back(d);
  se = SeBlock(opts.channels, opts.se_reduction);
}

void HierResBlock::Init(Rng& rng) {
  for (auto& c : convs) c.Init(rng);
  se.Init(rng);
}

Tensor HierResBlock::Forward(const Tensor& x, bool training) const {
  if (x.rank() != 3 || x.dim(1) != opts_.channels) {
    throw DimensionError("hier block: expected [B x " + std::to_string(opts_.channels) +
                         " x T], got " + ShapeToString(x.shape()));
  }
  const std::size_t s = opts_.scale, width = opts_.channels / s;
  Tensor cat;
  if (s == 1) {
    cat = convs[0].Forward(x, training);
  } else {
    std::vector<Tensor> ys;
    ys.push_back(Slice(x, 1, 0, width));
    for (std::size_t i = 1; i < s; ++i) {
      Tensor g = Slice(x, 1, i * width, width);
      ys.push_back(convs[i - 1].Forward(Add(g, ys.back()), training));
    }
    cat = Concat(ys, 1);
  }
  return Add(se.Forward(cat), x);
}

void HierResBlock::Collect(const std::string& prefix, NamedState& out) const {
  for (std::size_t i = 0; i < convs.size(); ++i) {
    convs[i].Collect(prefix + "." + std::to_string(i), out);
  }
  se.Collect(prefix + ".se", out);
}

std::size_t HierResBlock::Flops(std::size_t T) const {
  std::size_t f = se.Flops();
  for (const auto& c : convs) f += c.Flops(T);
  return f;
}

void HierResBlock::set_temperature(double tau) {
  for (auto& c : convs) c.set_temperature(tau);
}

}  // namespace dksv
