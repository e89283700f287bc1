// src/numerics/batch-norm.h

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

#ifndef DKSV_NUMERICS_BATCH_NORM_H_
#define DKSV_NUMERICS_BATCH_NORM_H_

#include <cstddef>
#include <vector>

#include "numerics/tensor.h"

namespace dksv {

struct BatchNormOptions {
  double momentum = 0.1;  // running = (1 - momentum) * running + momentum * batch
  double eps = 1e-5;
};

/// Per-channel batch normalization over [B x C x T] or [B x C] inputs.
///
/// Training mode normalizes with the biased batch statistics over all
/// non-channel positions and folds them into the running estimates.
/// Inference mode uses the running estimates and leaves them untouched.
/// Training-mode calls mutate the running statistics, so a block must not be
/// shared between threads while training.
class BatchNorm {
 public:
  BatchNorm() = default;
  explicit BatchNorm(std::size_t channels, BatchNormOptions options = {});

  Tensor Forward(const Tensor& x, bool training) const;

  std::size_t channels() const { return running_mean_.size(); }
  const BatchNormOptions& options() const { return options_; }

  Tensor gamma;
  Tensor beta;

  std::vector<double>& running_mean() const { return running_mean_; }
  std::vector<double>& running_var() const { return running_var_; }

 private:
  BatchNormOptions options_;
  mutable std::vector<double> running_mean_;
  mutable std::vector<double> running_var_;
};

}  // namespace dksv

#endif  // DKSV_NUMERICS_BATCH_NORM_H_
