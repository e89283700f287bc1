// tests/grad-check.h

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

#ifndef DKSV_TESTS_GRAD_CHECK_H_
#define DKSV_TESTS_GRAD_CHECK_H_

// Central finite-difference gradient checking and random tensor helpers for
// the test suites.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "numerics/ops.h"
#include "numerics/tensor.h"

namespace dksv::testing {

inline Tensor RandomTensor(const Shape& shape, std::mt19937_64& rng,
                           double lo = -1.0, double hi = 1.0,
                           bool requires_grad = true) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(NumElements(shape));
  for (double& x : v) x = u(rng);
  return Tensor::FromData(shape, std::move(v), requires_grad);
}

inline std::vector<double> RandomVector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// Norm-wise relative error ||a - n|| / max(||a||, ||n||, floor).
inline double RelativeError(const std::vector<double>& analytic,
                            const std::vector<double>& numeric,
                            double floor = 1e-8) {
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nn), floor});
}

/// Compares reverse-mode gradients of the scalar `f(inputs)` against central
/// differences with step `h`. Returns the norm-wise relative error over the
/// concatenated gradients of all inputs, so that inputs whose exact gradient
/// vanishes (a bias in front of a normalization) are judged against the
/// overall gradient scale rather than against rounding noise.
/// `f` must rebuild its graph from the given leaves on every call.
inline double GradCheck(const std::function<Tensor(const std::vector<Tensor>&)>& f,
                        std::vector<Tensor> inputs, double h = 1e-5) {
  for (Tensor& t : inputs) t.ZeroGrad();
  Backward(f(inputs));
  std::vector<double> analytic, numeric;
  for (Tensor& t : inputs) {
    if (t.has_grad()) {
      analytic.insert(analytic.end(), t.grad().begin(), t.grad().end());
    } else {
      analytic.insert(analytic.end(), t.size(), 0.0);
    }
    auto d = t.mutable_data();
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double orig = d[i];
      NoGradGuard no_grad;
      d[i] = orig + h;
      const double fp = f(inputs).item();
      d[i] = orig - h;
      const double fm = f(inputs).item();
      d[i] = orig;
      numeric.push_back((fp - fm) / (2.0 * h));
    }
  }
  return RelativeError(analytic, numeric);
}

}  // namespace dksv::testing

#endif  // DKSV_TESTS_GRAD_CHECK_H_
