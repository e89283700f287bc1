// src/numerics/kernels-parallel.cc

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

#include <algorithm>
#include <atomic>
#include <vector>

#include "numerics/kernels.h"

namespace dksv::kernels {

namespace {
std::atomic<KernelMode> kernel_mode{KernelMode::kParallel};

// Range of output frames [lo, hi) whose tap j lands inside the input.
struct TapRange {
  long lo, hi, offset;
};

inline TapRange ValidRange(const Conv1dDims& d, std::size_t j) {
  const long T = static_cast<long>(d.time);
  const long offset =
      static_cast<long>(j * d.dilation) - static_cast<long>(d.pad());
  return {std::max(0L, -offset), std::min(T, T - offset), offset};
}
}  // namespace

void SetKernelMode(KernelMode mode) { kernel_mode.store(mode); }
KernelMode GetKernelMode() { return kernel_mode.load(); }

namespace parallel {

void Conv1dForward(const Conv1dDims& d, std::span<const double> x,
                   std::span<const double> w, std::span<const double> bias,
                   std::span<double> y) {
  const long B = static_cast<long>(d.batch), cout = static_cast<long>(d.out_channels);
  const std::size_t cin = d.in_channels, T = d.time, k = d.kernel;
#pragma omp parallel for collapse(2) schedule(static)
  for (long b = 0; b < B; ++b) {
    for (long co = 0; co < cout; ++co) {
      const double* wb =
          w.data() + (d.per_batch_weight ? b * d.weight_stride() : 0) + co * cin * k;
      const double* bb = bias.data() + (d.per_batch_bias ? b * cout : 0);
      double* yr = y.data() + (b * cout + co) * T;
      std::fill(yr, yr + T, bb[co]);
      for (std::size_t ci = 0; ci < cin; ++ci) {
        const double* xr = x.data() + (b * cin + ci) * T;
        for (std::size_t j = 0; j < k; ++j) {
          const double wv = wb[ci * k + j];
          const TapRange r = ValidRange(d, j);
          for (long t = r.lo; t < r.hi; ++t) yr[t] += wv * xr[t + r.offset];
        }
      }
    }
  }
}

void Conv1dBackwardInput(const Conv1dDims& d, std::span<const double> gy,
                         std::span<const double> w, std::span<double> gx) {
  const long B = static_cast<long>(d.batch), cin = static_cast<long>(d.in_channels);
  const std::size_t cout = d.out_channels, T = d.time, k = d.kernel;
#pragma omp parallel for collapse(2) schedule(static)
  for (long b = 0; b < B; ++b) {
    for (long ci = 0; ci < cin; ++ci) {
      const double* wb = w.data() + (d.per_batch_weight ? b * d.weight_stride() : 0);
      double* gxr = gx.data() + (b * cin + ci) * T;
      for (std::size_t co = 0; co < cout; ++co) {
        const double* gyr = gy.data() + (b * cout + co) * T;
        for (std::size_t j = 0; j < k; ++j) {
          const double wv = wb[(co * cin + ci) * k + j];
          const TapRange r = ValidRange(d, j);
          for (long t = r.lo; t < r.hi; ++t) gxr[t + r.offset] += wv * gyr[t];
        }
      }
    }
  }
}

void Conv1dBackwardWeight(const Conv1dDims& d, std::span<const double> gy,
                          std::span<const double> x, std::span<double> gw) {
  const std::size_t cin = d.in_channels, cout = d.out_channels, T = d.time,
                    k = d.kernel;
  auto row = [&](std::size_t b, std::size_t co, double* gwr) {
    const double* gyr = gy.data() + (b * cout + co) * T;
    for (std::size_t ci = 0; ci < cin; ++ci) {
      const double* xr = x.data() + (b * cin + ci) * T;
      for (std::size_t j = 0; j < k; ++j) {
        const TapRange r = ValidRange(d, j);
        double sum = 0.0;
        for (long t = r.lo; t < r.hi; ++t) sum += gyr[t] * xr[t + r.offset];
        gwr[ci * k + j] += sum;
      }
    }
  };
  if (d.per_batch_weight) {
    const long B = static_cast<long>(d.batch), C = static_cast<long>(cout);
#pragma omp parallel for collapse(2) schedule(static)
    for (long b = 0; b < B; ++b) {
      for (long co = 0; co < C; ++co) {
        row(b, co, gw.data() + b * d.weight_stride() + co * cin * k);
      }
    }
  } else {
    const long C = static_cast<long>(cout);
#pragma omp parallel for schedule(static)
    for (long co = 0; co < C; ++co) {
      for (std::size_t b = 0; b < d.batch; ++b) row(b, co, gw.data() + co * cin * k);
    }
  }
}

void MatMul(std::size_t m, std::size_t k, std::size_t n,
            std::span<const double> a, std::span<const double> b,
            std::span<double> c) {
  const long M = static_cast<long>(m);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < M; ++i) {
    double* cr = c.data() + i * n;
    std::fill(cr, cr + n, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const double av = a[i * k + p];
      const double* br = b.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) cr[j] += av * br[j];
    }
  }
}

void MatMulGradA(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> gc, std::span<const double> b,
                 std::span<double> ga) {
  const long M = static_cast<long>(m);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < M; ++i) {
    const double* gcr = gc.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double* br = b.data() + p * n;
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += gcr[j] * br[j];
      ga[i * k + p] += sum;
    }
  }
}

void MatMulGradB(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> a, std::span<const double> gc,
                 std::span<double> gb) {
  const long K = static_cast<long>(k);
#pragma omp parallel
  {
    std::vector<double> acc(n);
#pragma omp for schedule(static)
    for (long p = 0; p < K; ++p) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        const double av = a[i * k + p];
        const double* gcr = gc.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) acc[j] += av * gcr[j];
      }
      double* gbr = gb.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) gbr[j] += acc[j];
    }
  }
}

}  // namespace parallel

#define DKSV_DISPATCH(fn, ...)                                      \
  (GetKernelMode() == KernelMode::kReference ? reference::fn(__VA_ARGS__) \
                                             : parallel::fn(__VA_ARGS__))

void Conv1dForward(const Conv1dDims& d, std::span<const double> x,
                   std::span<const double> w, std::span<const double> bias,
                   std::span<double> y) {
  DKSV_DISPATCH(Conv1dForward, d, x, w, bias, y);
}

void Conv1dBackwardInput(const Conv1dDims& d, std::span<const double> gy,
                         std::span<const double> w, std::span<double> gx) {
  DKSV_DISPATCH(Conv1dBackwardInput, d, gy, w, gx);
}

void Conv1dBackwardWeight(const Conv1dDims& d, std::span<const double> gy,
                          std::span<const double> x, std::span<double> gw) {
  DKSV_DISPATCH(Conv1dBackwardWeight, d, gy, x, gw);
}

void MatMul(std::size_t m, std::size_t k, std::size_t n,
            std::span<const double> a, std::span<const double> b,
            std::span<double> c) {
  DKSV_DISPATCH(MatMul, m, k, n, a, b, c);
}

void MatMulGradA(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> gc, std::span<const double> b,
                 std::span<double> ga) {
  DKSV_DISPATCH(MatMulGradA, m, k, n, gc, b, ga);
}

void MatMulGradB(std::size_t m, std::size_t k, std::size_t n,
                 std::span<const double> a, std::span<const double> gc,
                 std::span<double> gb) {
  DKSV_DISPATCH(MatMulGradB, m, k, n, a, gc, gb);
}

#undef DKSV_DISPATCH

}  // namespace dksv::kernels
