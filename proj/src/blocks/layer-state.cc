// src/blocks/layer-state.cc

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

#include "blocks/layer-state.h"

#include <cmath>

#include "numerics/ops.h"

namespace dksv {

void NamedState::AddBatchNorm(const std::string& prefix, const BatchNorm& bn) {
  params.emplace_back(prefix + ".gamma", bn.gamma);
  params.emplace_back(prefix + ".beta", bn.beta);
  buffers.emplace_back(prefix + ".running_mean", &bn.running_mean());
  buffers.emplace_back(prefix + ".running_var", &bn.running_var());
}

std::size_t NamedState::NumParamScalars() const {
  std::size_t n = 0;
  for (const auto& p : params) n += p.second.size();
  return n;
}

Linear::Linear(std::size_t in, std::size_t out)
    : weight(Tensor::Zeros({out, in}, true)), bias(Tensor::Zeros({out}, true)) {}

void Linear::Init(Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in()));
  FillUniform(weight, bound, rng);
  FillUniform(bias, bound, rng);
}

Tensor Linear::Forward(const Tensor& x) const { return Dense(x, weight, bias); }

void Linear::Collect(const std::string& prefix, NamedState& out) const {
  out.params.emplace_back(prefix + ".weight", weight);
  out.params.emplace_back(prefix + ".bias", bias);
}

void FillUniform(Tensor& t, double bound, Rng& rng) {
  std::uniform_real_distribution<double> u(-bound, bound);
  for (double& v : t.mutable_data()) v = u(rng);
}

}  // namespace dksv
