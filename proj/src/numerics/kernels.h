// src/numerics/kernels.h

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

#ifndef DKSV_NUMERICS_KERNELS_H_
#define DKSV_NUMERICS_KERNELS_H_

// Raw compute kernels behind the differentiable ops. Each kernel exists in
// two forms:
//
//   reference::  direct transcription of the defining sum, one output element
//                at a time, single-threaded. Kept for testing.
//   parallel::   loop-reordered for contiguous inner loops and split across
//                OpenMP threads. Work is partitioned over output elements
//                only, so no reduction is ever shared between threads and the
//                result does not depend on the thread count.
//
// The unqualified entry points dispatch on the process-wide KernelMode.

#include <cstddef>
#include <span>

namespace dksv::kernels {

enum class KernelMode { kReference, kParallel };

void SetKernelMode(KernelMode mode);
KernelMode GetKernelMode();

/// Dilated 1-D convolution with "same" zero padding of dilation*(k-1)/2.
struct Conv1dDims {
  std::size_t batch = 1;
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t time = 1;
  std::size_t kernel = 1;
  std::size_t dilation = 1;
  bool per_batch_weight = false;  // weight is [B x Cout x Cin x k]
  bool per_batch_bias = false;    // bias is [B x Cout]

  std::size_t pad() const { return dilation * (kernel - 1) / 2; }
  std::size_t weight_stride() const {
    return out_channels * in_channels * kernel;
  }
};

/// Overwrites y[B x Cout x T].
void Conv1dForward(const Conv1dDims& d, std::span<const double> x,
                   std::span<const double> w, std::span<const double> bias,
                   std::span<double> y);
/// Accumulates into gx[B x Cin x T].
void Conv1dBackwardInput(const Conv1dDims& d, std::span<const double> gy,
                         std::span<const double> w, std::span<double> gx);
/// Accumulates into gw (shared or per-batch layout per `d`).
void Conv1dBackwardWeight(const Conv1dDims& d, std::span<const double> gy,
                          std::span<const double> x, std::span<double> gw);

/// C[M x N] = A[M x K] * B[K x N] (overwrite).
void MatMul(std::size_t m, std::size_t k, std::size_t n,
            std::span<const double> a, std::span<const double> b,
            std::span<double> c);
/// gA[M x K] += gC * B^T.
void MatMulGradA(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> gc, std::span<const double> b,
                 std::span<double> ga);
/// gB[K x N] += A^T * gC.
void MatMulGradB(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> a, std::span<const double> gc,
                 std::span<double> gb);

namespace reference {
void Conv1dForward(const Conv1dDims& d, std::span<const double> x,
                   std::span<const double> w, std::span<const double> bias,
                   std::span<double> y);
void Conv1dBackwardInput(const Conv1dDims& d, std::span<const double> gy,
                         std::span<const double> w, std::span<double> gx);
void Conv1dBackwardWeight(const Conv1dDims& d, std::span<const double> gy,
                          std::span<const double> x, std::span<double> gw);
void MatMul(std::size_t m, std::size_t k, std::size_t n,
            std::span<const double> a, std::span<const double> b,
            std::span<double> c);
void MatMulGradA(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> gc, std::span<const double> b,
                 std::span<double> ga);
void MatMulGradB(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> a, std::span<const double> gc,
                 std::span<double> gb);
}  // namespace reference

namespace parallel {
void Conv1dForward(const Conv1dDims& d, std::span<const double> x,
                   std::span<const double> w, std::span<const double> bias,
                   std::span<double> y);
void Conv1dBackwardInput(const Conv1dDims& d, std::span<const double> gy,
                         std::span<const double> w, std::span<double> gx);
void Conv1dBackwardWeight(const Conv1dDims& d, std::span<const double> gy,
                          std::span<const double> x, std::span<double> gw);
void MatMul(std::size_t m, std::size_t k, std::size_t n,
            std::span<const double> a, std::span<const double> b,
            std::span<double> c);
void MatMulGradA(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> gc, std::span<const double> b,
                 std::span<double> ga);
void MatMulGradB(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> a, std::span<const double> gc,
                 std::span<double> gb);
}  // namespace parallel

}  // namespace dksv::kernels

#endif  // DKSV_NUMERICS_KERNELS_H_
