// src/numerics/adam.h

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

#ifndef DKSV_NUMERICS_ADAM_H_
#define DKSV_NUMERICS_ADAM_H_

#include <cstdint>
#include <vector>

#include "numerics/tensor.h"

namespace dksv {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::uint64_t step = 0;
  std::vector<std::vector<double>> m;  // one per tracked parameter
  std::vector<std::vector<double>> v;
};

/// Bias-corrected Adam over a fixed list of parameter leaves.
class Adam {
 public:
  explicit Adam(std::vector<Tensor> params, AdamOptions options = {});

  /// Applies one update with learning rate `lr` using the accumulated
  /// gradients. A parameter whose gradient holds a non-finite value is left
  /// untouched (moments included) and counted in the return value.
  std::size_t Step(double lr);

  void ZeroGrad();

  const AdamState& state() const { return state_; }
  const AdamOptions& options() const { return options_; }
  const std::vector<Tensor>& params() const { return params_; }

 private:
  std::vector<Tensor> params_;
  AdamOptions options_;
  AdamState state_;
};

}  // namespace dksv

#endif  // DKSV_NUMERICS_ADAM_H_
