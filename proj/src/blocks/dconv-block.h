// src/blocks/dconv-block.h

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

#ifndef DKSV_BLOCKS_DCONV_BLOCK_H_
#define DKSV_BLOCKS_DCONV_BLOCK_H_

#include <cstddef>
#include <string>

#include "blocks/layer-state.h"
#include "numerics/batch-norm.h"
#include "numerics/tensor.h"

namespace dksv {

struct DconvOptions {
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t kernel_size = 3;
  std::size_t dilation = 1;
  std::size_t num_kernels = 4;   // K
  std::size_t att_channels = 0;  // hidden width of the kernel attention; 0 = max(1, in / 4)
  double temperature = 1.0;
  BatchNormOptions bn;
};

/// Dynamic convolution: K parallel kernels mixed per input by a softmax
/// attention over a time-pooled summary, followed by BN and ReLU.
///
///   alpha = softmax(fc2(relu(fc1(mean_t x))) / tau)
///   y     = relu(bn(conv1d(x, sum_k alpha_k W_k, sum_k alpha_k b_k)))
class DconvBlock {
 public:
  struct Trace {
    Tensor alpha;   // [B x K]
    Tensor pre_bn;  // [B x Cout x T]
  };

  DconvBlock() = default;
  explicit DconvBlock(const DconvOptions& opts);

  /// Kaiming-uniform kernels, U(+-1/sqrt(fan_in)) biases, default-initialized
  /// attention layers, BN gamma 1 / beta 0.
  void Init(Rng& rng);

  Tensor KernelAttention(const Tensor& x) const;
  Tensor Forward(const Tensor& x, bool training, Trace* trace = nullptr) const;

  void Collect(const std::string& prefix, NamedState& out) const;

  std::size_t in_channels() const { return opts_.in_channels; }
  std::size_t out_channels() const { return opts_.out_channels; }
  std::size_t num_kernels() const { return opts_.num_kernels; }
  std::size_t kernel_size() const { return opts_.kernel_size; }
  std::size_t dilation() const { return opts_.dilation; }
  double temperature() const { return temperature_; }
  void set_temperature(double tau);

  /// Multiply-adds for one utterance of T frames (convolution, aggregation
  /// and attention).
  std::size_t Flops(std::size_t T) const;

  Tensor kernels;  // [K x Cout x Cin x k]
  Tensor biases;   // [K x Cout]
  Linear att_fc1;  // Cin -> A
  Linear att_fc2;  // A -> K
  BatchNorm bn;

 private:
  DconvOptions opts_;
  double temperature_ = 1.0;
};

/// Ordinary convolution + BN + ReLU with a single kernel.
class StaticConvBlock {
 public:
  StaticConvBlock() = default;
  StaticConvBlock(std::size_t in, std::size_t out, std::size_t kernel_size,
                  std::size_t dilation, BatchNormOptions bn_options = {});

  Tensor Forward(const Tensor& x, bool training, Tensor* pre_bn = nullptr) const;

  Tensor kernel;  // [Cout x Cin x k]
  Tensor bias;    // [Cout]
  BatchNorm bn;
  std::size_t dilation = 1;
};

}  // namespace dksv

#endif  // DKSV_BLOCKS_DCONV_BLOCK_H_
