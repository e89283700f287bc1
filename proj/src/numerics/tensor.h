// src/numerics/tensor.h

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

#ifndef DKSV_NUMERICS_TENSOR_H_
#define DKSV_NUMERICS_TENSOR_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dksv {

using Shape = std::vector<std::size_t>;

std::size_t NumElements(const Shape& shape);
std::string ShapeToString(const Shape& shape);

class Tensor;
struct TensorImpl;

/// Backprop record attached to a computed tensor. `backward` receives the
/// output's gradient and accumulates into the parents' gradients.
struct Node {
  std::string op;
  std::vector<std::shared_ptr<TensorImpl>> parents;
  std::function<void(std::span<const double> out_grad)> backward;
};

struct TensorImpl {
  Shape shape;
  std::vector<double> data;
  std::vector<double> grad;  // empty until first accumulation
  bool requires_grad = false;
  std::shared_ptr<Node> node;  // null for leaves

  /// Returns the gradient buffer, allocating zeros on first use.
  std::vector<double>& GradBuffer();
};

/// Dense row-major double tensor with reverse-mode lineage.
///
/// Tensor is a handle: copies share storage. Values are treated as
/// immutable once a tensor has been used as an input to an op; only
/// parameter leaves are modified in place (by the optimizer).
class Tensor {
 public:
  Tensor() = default;

  static Tensor Zeros(const Shape& shape, bool requires_grad = false);
  static Tensor Filled(const Shape& shape, double value,
                       bool requires_grad = false);
  static Tensor FromData(const Shape& shape, std::vector<double> data,
                         bool requires_grad = false);
  static Tensor Scalar(double value, bool requires_grad = false);

  bool defined() const { return impl_ != nullptr; }
  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t size() const;

  std::span<const double> data() const;
  /// Mutable view; only meant for leaves (initialization, optimizer).
  std::span<double> mutable_data();
  double item() const;
  double at(std::initializer_list<std::size_t> index) const;

  bool requires_grad() const;
  bool has_grad() const;
  /// Gradient view; empty span if no gradient was accumulated.
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  void ZeroGrad();
  bool is_leaf() const;
  std::string op_name() const;

  /// Copy of the values with no lineage.
  Tensor Detach() const;

  const std::shared_ptr<TensorImpl>& impl() const { return impl_; }
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<TensorImpl> impl_;
};

/// Runs the reverse sweep from a scalar loss. Gradients accumulate (+=) into
/// every reachable tensor that requires grad.
void Backward(const Tensor& loss);

bool GradEnabled();

/// Disables graph recording on the current thread for its lifetime.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

/// Creates the output of an op. Records a node only when grad mode is on and
/// at least one input requires grad.
Tensor MakeResult(const std::string& op, Shape shape, std::vector<double> data,
                  const std::vector<Tensor>& inputs,
                  std::function<void(std::span<const double>)> backward);

}  // namespace dksv

#endif  // DKSV_NUMERICS_TENSOR_H_
