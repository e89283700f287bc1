// src/blocks/dconv-block.cc

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

#include "blocks/dconv-block.h"

#include <algorithm>
#include <cmath>

#include "base/error.h"
#include "numerics/ops.h"

namespace dksv {

DconvBlock::DconvBlock(const DconvOptions& opts) : opts_(opts) {
  if (opts.in_channels == 0 || opts.out_channels == 0) {
    throw ConfigError("dconv: channel counts must be positive");
  }
  if (opts.num_kernels == 0) throw ConfigError("dconv: need at least one kernel (K >= 1)");
  if (opts.kernel_size % 2 == 0) {
    throw ConfigError("dconv: kernel size must be odd, got " + std::to_string(opts.kernel_size));
  }
  if (opts.dilation == 0) throw ConfigError("dconv: dilation must be positive");
  if (opts_.att_channels == 0) opts_.att_channels = std::max<std::size_t>(1, opts.in_channels / 4);
  set_temperature(opts.temperature);
  const std::size_t K = opts.num_kernels;
  kernels = Tensor::Zeros({K, opts.out_channels, opts.in_channels, opts.kernel_size}, true);
  biases = Tensor::Zeros({K, opts.out_channels}, true);
  att_fc1 = Linear(opts.in_channels, opts_.att_channels);
  att_fc2 = Linear(opts_.att_channels, K);
  bn = BatchNorm(opts.out_channels, opts.bn);
}

void DconvBlock::set_temperature(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ConfigError("dconv: temperature must be positive and finite");
  }
  temperature_ = tau;
}

void DconvBlock::Init(Rng& rng) {
  const double fan_in = static_cast<double>(opts_.in_channels * opts_.kernel_size);
  FillUniform(kernels, std::sqrt(6.0 / fan_in), rng);
  FillUniform(biases, 1.0 / std::sqrt(fan_in), rng);
  att_fc1.Init(rng);
  att_fc2.Init(rng);
}

Tensor DconvBlock::KernelAttention(const Tensor& x) const {
  if (x.rank() != 3 || x.dim(1) != opts_.in_channels) {
    throw DimensionError("dconv: expected [B x " + std::to_string(opts_.in_channels) +
                         " x T] input, got " + ShapeToString(x.shape()));
  }
  Tensor logits = att_fc2.Forward(Relu(att_fc1.Forward(MeanTime(x))));
  if (temperature_ != 1.0) logits = Scale(logits, 1.0 / temperature_);
  return Softmax(logits, 1);
}

Tensor DconvBlock::Forward(const Tensor& x, bool training, Trace* trace) const {
  Tensor alpha = KernelAttention(x);
  const std::size_t B = x.dim(0), K = opts_.num_kernels;
  const std::size_t Cout = opts_.out_channels, Cin = opts_.in_channels, k = opts_.kernel_size;
  Tensor w = Reshape(MatMul(alpha, Reshape(kernels, {K, Cout * Cin * k})), {B, Cout, Cin, k});
  Tensor b = MatMul(alpha, biases);
  Tensor z = Conv1d(x, w, b, opts_.dilation);
  if (trace) {
    trace->alpha = alpha;
    trace->pre_bn = z;
  }
  return Relu(bn.Forward(z, training));
}

void DconvBlock::Collect(const std::string& prefix, NamedState& out) const {
  out.params.emplace_back(prefix + ".kernels", kernels);
  out.params.emplace_back(prefix + ".biases", biases);
  att_fc1.Collect(prefix + ".att_fc1", out);
  att_fc2.Collect(prefix + ".att_fc2", out);
  out.AddBatchNorm(prefix + ".bn", bn);
}

std::size_t DconvBlock::Flops(std::size_t T) const {
  const std::size_t K = opts_.num_kernels, A = opts_.att_channels;
  const std::size_t kernel_scalars = opts_.out_channels * opts_.in_channels * opts_.kernel_size;
  const std::size_t conv = kernel_scalars * T;
  const std::size_t aggregate = K * (kernel_scalars + opts_.out_channels);
  const std::size_t attention = opts_.in_channels * A + A * K;
  return conv + aggregate + attention;
}

StaticConvBlock::StaticConvBlock(std::size_t in, std::size_t out, std::size_t kernel_size,
                                 std::size_t dil, BatchNormOptions bn_options)
    : kernel(Tensor::Zeros({out, in, kernel_size}, true)),
      bias(Tensor::Zeros({out}, true)),
      bn(out, bn_options),
      dilation(dil) {}

Tensor StaticConvBlock::Forward(const Tensor& x, bool training, Tensor* pre_bn) const {
  Tensor z = Conv1d(x, kernel, bias, dilation);
  if (pre_bn) *pre_bn = z;
  return Relu(bn.Forward(z, training));
}

}  // namespace dksv
