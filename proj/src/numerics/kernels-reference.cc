// src/numerics/kernels-reference.cc

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

#include "numerics/kernels.h"

namespace dksv::kernels::reference {

namespace {

// Input index for output frame t and tap j, or -1 inside the zero padding.
inline long Tap(const Conv1dDims& d, std::size_t t, std::size_t j) {
  long s = static_cast<long>(t + j * d.dilation) - static_cast<long>(d.pad());
  return (s < 0 || s >= static_cast<long>(d.time)) ? -1 : s;
}

}  // namespace

void Conv1dForward(const Conv1dDims& d, std::span<const double> x,
                   std::span<const double> w, std::span<const double> bias,
                   std::span<double> y) {
  const std::size_t cin = d.in_channels, cout = d.out_channels, T = d.time,
                    k = d.kernel;
  for (std::size_t b = 0; b < d.batch; ++b) {
    const double* wb = w.data() + (d.per_batch_weight ? b * d.weight_stride() : 0);
    const double* bb = bias.data() + (d.per_batch_bias ? b * cout : 0);
    for (std::size_t co = 0; co < cout; ++co) {
      for (std::size_t t = 0; t < T; ++t) {
        double sum = bb[co];
        for (std::size_t ci = 0; ci < cin; ++ci) {
          for (std::size_t j = 0; j < k; ++j) {
            long s = Tap(d, t, j);
            if (s < 0) continue;
            sum += wb[(co * cin + ci) * k + j] * x[(b * cin + ci) * T + s];
          }
        }
        y[(b * cout + co) * T + t] = sum;
      }
    }
  }
}

void Conv1dBackwardInput(const Conv1dDims& d, std::span<const double> gy,
                         std::span<const double> w, std::span<double> gx) {
  const std::size_t cin = d.in_channels, cout = d.out_channels, T = d.time,
                    k = d.kernel;
  for (std::size_t b = 0; b < d.batch; ++b) {
    const double* wb = w.data() + (d.per_batch_weight ? b * d.weight_stride() : 0);
    for (std::size_t co = 0; co < cout; ++co) {
      for (std::size_t t = 0; t < T; ++t) {
        const double g = gy[(b * cout + co) * T + t];
        for (std::size_t ci = 0; ci < cin; ++ci) {
          for (std::size_t j = 0; j < k; ++j) {
            long s = Tap(d, t, j);
            if (s < 0) continue;
            gx[(b * cin + ci) * T + s] += g * wb[(co * cin + ci) * k + j];
          }
        }
      }
    }
  }
}

void Conv1dBackwardWeight(const Conv1dDims& d, std::span<const double> gy,
                          std::span<const double> x, std::span<double> gw) {
  const std::size_t cin = d.in_channels, cout = d.out_channels, T = d.time,
                    k = d.kernel;
  for (std::size_t b = 0; b < d.batch; ++b) {
    double* gwb = gw.data() + (d.per_batch_weight ? b * d.weight_stride() : 0);
    for (std::size_t co = 0; co < cout; ++co) {
      for (std::size_t ci = 0; ci < cin; ++ci) {
        for (std::size_t j = 0; j < k; ++j) {
          double sum = 0.0;
          for (std::size_t t = 0; t < T; ++t) {
            long s = Tap(d, t, j);
            if (s < 0) continue;
            sum += gy[(b * cout + co) * T + t] * x[(b * cin + ci) * T + s];
          }
          gwb[(co * cin + ci) * k + j] += sum;
        }
      }
    }
  }
}

void MatMul(std::size_t m, std::size_t k, std::size_t n,
            std::span<const double> a, std::span<const double> b,
            std::span<double> c) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t p = 0; p < k; ++p) sum += a[i * k + p] * b[p * n + j];
      c[i * n + j] = sum;
    }
  }
}

void MatMulGradA(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> gc, std::span<const double> b,
                 std::span<double> ga) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += gc[i * n + j] * b[p * n + j];
      ga[i * k + p] += sum;
    }
  }
}

void MatMulGradB(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> a, std::span<const double> gc,
                 std::span<double> gb) {
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) sum += a[i * k + p] * gc[i * n + j];
      gb[p * n + j] += sum;
    }
  }
}

}  // namespace dksv::kernels::reference
