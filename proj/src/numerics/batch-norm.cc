// src/numerics/batch-norm.cc

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

#include "numerics/batch-norm.h"

#include <cmath>
#include <memory>

#include "base/error.h"

namespace dksv {

BatchNorm::BatchNorm(std::size_t channels, BatchNormOptions options)
    : options_(options),
      running_mean_(channels, 0.0),
      running_var_(channels, 1.0) {
  if (!(options.eps > 0.0)) throw ConfigError("batch_norm: eps must be positive");
  if (options.momentum < 0.0 || options.momentum > 1.0) {
    throw ConfigError("batch_norm: momentum must lie in [0, 1]");
  }
  gamma = Tensor::Filled({channels}, 1.0, true);
  beta = Tensor::Zeros({channels}, true);
}

Tensor BatchNorm::Forward(const Tensor& x, bool training) const {
  if (x.rank() != 2 && x.rank() != 3) {
    throw DimensionError("batch_norm: input must be [B x C] or [B x C x T]");
  }
  const std::size_t B = x.dim(0), C = x.dim(1), T = x.rank() == 3 ? x.dim(2) : 1;
  if (C != channels()) {
    throw DimensionError("batch_norm: input has " + std::to_string(C) +
                         " channels, state has " + std::to_string(channels()));
  }
  const std::size_t n = B * T;
  auto xs = x.data();
  auto gs = gamma.data();
  auto bs = beta.data();

  std::vector<double> mean(C), inv_std(C);
  if (training) {
    for (std::size_t c = 0; c < C; ++c) {
      double s = 0.0;
      for (std::size_t b = 0; b < B; ++b)
        for (std::size_t t = 0; t < T; ++t) s += xs[(b * C + c) * T + t];
      const double mu = s / n;
      double v = 0.0;
      for (std::size_t b = 0; b < B; ++b)
        for (std::size_t t = 0; t < T; ++t) {
          const double d = xs[(b * C + c) * T + t] - mu;
          v += d * d;
        }
      v /= n;
      mean[c] = mu;
      inv_std[c] = 1.0 / std::sqrt(v + options_.eps);
      const double m = options_.momentum;
      running_mean_[c] = (1.0 - m) * running_mean_[c] + m * mu;
      running_var_[c] = (1.0 - m) * running_var_[c] + m * v;
    }
  } else {
    for (std::size_t c = 0; c < C; ++c) {
      mean[c] = running_mean_[c];
      inv_std[c] = 1.0 / std::sqrt(running_var_[c] + options_.eps);
    }
  }

  std::vector<double> y(x.size());
  auto xhat = std::make_shared<std::vector<double>>(x.size());
  for (std::size_t b = 0; b < B; ++b)
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t t = 0; t < T; ++t) {
        const std::size_t i = (b * C + c) * T + t;
        (*xhat)[i] = (xs[i] - mean[c]) * inv_std[c];
        y[i] = gs[c] * (*xhat)[i] + bs[c];
      }

  auto xi = x.impl(), gi = gamma.impl(), bi = beta.impl();
  return MakeResult(
      training ? "batch_norm_train" : "batch_norm_infer", x.shape(), std::move(y),
      {x, gamma, beta},
      [xi, gi, bi, xhat, inv_std, B, C, T, n, training](std::span<const double> g) {
        const auto& xh = *xhat;
        std::vector<double> sum_g(C, 0.0), sum_gx(C, 0.0);
        for (std::size_t b = 0; b < B; ++b)
          for (std::size_t c = 0; c < C; ++c)
            for (std::size_t t = 0; t < T; ++t) {
              const std::size_t i = (b * C + c) * T + t;
              sum_g[c] += g[i];
              sum_gx[c] += g[i] * xh[i];
            }
        if (gi->requires_grad) {
          auto& gg = gi->GradBuffer();
          for (std::size_t c = 0; c < C; ++c) gg[c] += sum_gx[c];
        }
        if (bi->requires_grad) {
          auto& gb = bi->GradBuffer();
          for (std::size_t c = 0; c < C; ++c) gb[c] += sum_g[c];
        }
        if (!xi->requires_grad) return;
        auto& gx = xi->GradBuffer();
        for (std::size_t b = 0; b < B; ++b)
          for (std::size_t c = 0; c < C; ++c) {
            const double gamma_c = gi->data[c];
            for (std::size_t t = 0; t < T; ++t) {
              const std::size_t i = (b * C + c) * T + t;
              if (training) {
                // Batch statistics depend on x, hence the two correction terms.
                gx[i] += gamma_c * inv_std[c] *
                         (g[i] - sum_g[c] / n - xh[i] * sum_gx[c] / n);
              } else {
                gx[i] += gamma_c * inv_std[c] * g[i];
              }
            }
          }
      });
}

}  // namespace dksv
