// src/numerics/adam.cc

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

#include "numerics/adam.h"

#include <cmath>

#include <spdlog/spdlog.h>

#include "base/error.h"

namespace dksv {

Adam::Adam(std::vector<Tensor> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  for (const Tensor& p : params_) {
    if (!p.is_leaf() || !p.requires_grad()) {
      throw UsageError("adam: parameters must be leaves that require grad");
    }
    state_.m.emplace_back(p.size(), 0.0);
    state_.v.emplace_back(p.size(), 0.0);
  }
}

std::size_t Adam::Step(double lr) {
  if (lr < 0.0 || !std::isfinite(lr)) {
    throw ConfigError("adam: learning rate must be finite and nonnegative");
  }
  ++state_.step;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double t = static_cast<double>(state_.step);
  const double c1 = 1.0 - std::pow(b1, t);
  const double c2 = 1.0 - std::pow(b2, t);
  std::size_t skipped = 0;
  for (std::size_t p = 0; p < params_.size(); ++p) {
    Tensor& param = params_[p];
    auto g = param.grad();
    if (g.empty()) continue;  // not reached by the last backward pass
    bool finite = true;
    for (double x : g) finite = finite && std::isfinite(x);
    if (!finite) {
      spdlog::warn("adam: non-finite gradient in parameter {} ({}), update skipped",
                   p, ShapeToString(param.shape()));
      ++skipped;
      continue;
    }
    auto w = param.mutable_data();
    auto& m = state_.m[p];
    auto& v = state_.v[p];
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      w[i] -= lr * m_hat / (std::sqrt(v_hat) + options_.epsilon);
    }
  }
  return skipped;
}

void Adam::ZeroGrad() {
  for (Tensor& p : params_) p.ZeroGrad();
}

}  // namespace dksv
