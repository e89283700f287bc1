// src/numerics/ops.h

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

#ifndef DKSV_NUMERICS_OPS_H_
#define DKSV_NUMERICS_OPS_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "numerics/tensor.h"

namespace dksv {

// Differentiable primitives. Shapes follow the [batch x channels x time]
// convention for sequence tensors.

/// "Same"-padded dilated convolution.
///
/// Accepted layouts:
///   input [Cin x T],     kernel [Cout x Cin x k],     bias [Cout]
///   input [B x Cin x T], kernel [Cout x Cin x k],     bias [Cout]
///   input [B x Cin x T], kernel [B x Cout x Cin x k], bias [B x Cout]
/// The last form applies a different kernel to each batch element. The output
/// keeps the input's rank and time length. k must be odd.
Tensor Conv1d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              std::size_t dilation = 1);

/// Affine map along the last axis: input [... x N], weight [M x N], bias [M].
Tensor Dense(const Tensor& input, const Tensor& weight, const Tensor& bias);

/// a [M x K] * b [K x N].
Tensor MatMul(const Tensor& a, const Tensor& b);

Tensor Relu(const Tensor& x);
Tensor Sigmoid(const Tensor& x);
Tensor Tanh(const Tensor& x);
Tensor Log(const Tensor& x);
/// Max-shifted softmax along `axis`.
Tensor Softmax(const Tensor& x, std::size_t axis);

Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& x, double factor);
Tensor Sum(const Tensor& x);
Tensor Mean(const Tensor& x);
/// Sum of element-wise product with a constant weight tensor. Handy for
/// projecting an arbitrary output onto a scalar in gradient checks.
Tensor Dot(const Tensor& x, std::span<const double> weights);

Tensor Reshape(const Tensor& x, const Shape& shape);
Tensor Concat(const std::vector<Tensor>& parts, std::size_t axis);
Tensor Slice(const Tensor& x, std::size_t axis, std::size_t start,
             std::size_t length);

/// x [B x C x T] -> [B x C], average over time.
Tensor MeanTime(const Tensor& x);
/// x [B x C] -> [B x C x T], repeating along time.
Tensor BroadcastTime(const Tensor& x, std::size_t time);
/// x [B x C x T] scaled by gate [B x C].
Tensor ScaleChannels(const Tensor& x, const Tensor& gate);

/// Weighted first and second moments over the time axis.
///   h [B x C x T] with weights [T], [C x T] or [B x C x T].
/// mean = sum_t w h, std = sqrt(max(0, sum_t w h^2 - mean^2)). The clamp
/// gives a zero subgradient. Returns ([B x C], [B x C]).
std::pair<Tensor, Tensor> WeightedMoments(const Tensor& h, const Tensor& weights);

/// Moments of h [C x T] under a single simplex weight vector [T]. Throws
/// NumericError if the weights are negative or do not sum to 1 within 1e-4.
std::pair<Tensor, Tensor> StatPoolMoments(const Tensor& h, const Tensor& weights);

/// Mean over the batch of -log softmax(logits)[label]; logits [B x S].
Tensor CrossEntropy(const Tensor& logits, std::span<const int> labels);

}  // namespace dksv

#endif  // DKSV_NUMERICS_OPS_H_
