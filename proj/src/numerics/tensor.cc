// src/numerics/tensor.cc

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

#include "numerics/tensor.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "base/error.h"

namespace dksv {

namespace {
thread_local bool grad_enabled = true;
}  // namespace

std::size_t NumElements(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string ShapeToString(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << " x ";
    os << shape[i];
  }
  os << ']';
  return os.str();
}

std::vector<double>& TensorImpl::GradBuffer() {
  if (grad.empty()) grad.assign(data.size(), 0.0);
  return grad;
}

Tensor Tensor::Zeros(const Shape& shape, bool requires_grad) {
  return Filled(shape, 0.0, requires_grad);
}

Tensor Tensor::Filled(const Shape& shape, double value, bool requires_grad) {
  return FromData(shape, std::vector<double>(NumElements(shape), value),
                  requires_grad);
}

Tensor Tensor::FromData(const Shape& shape, std::vector<double> data,
                        bool requires_grad) {
  for (std::size_t d : shape) {
    if (d == 0) throw DimensionError("zero extent in shape " + ShapeToString(shape));
  }
  if (NumElements(shape) != data.size()) {
    throw DimensionError("shape " + ShapeToString(shape) + " needs " +
                         std::to_string(NumElements(shape)) +
                         " values, got " + std::to_string(data.size()));
  }
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = shape;
  impl->data = std::move(data);
  impl->requires_grad = requires_grad;
  return Tensor(std::move(impl));
}

Tensor Tensor::Scalar(double value, bool requires_grad) {
  return FromData({1}, {value}, requires_grad);
}

const Shape& Tensor::shape() const {
  if (!impl_) throw UsageError("use of undefined tensor");
  return impl_->shape;
}

std::size_t Tensor::dim(std::size_t axis) const {
  const Shape& s = shape();
  if (axis >= s.size()) {
    throw DimensionError("axis " + std::to_string(axis) + " out of range for " +
                         ShapeToString(s));
  }
  return s[axis];
}

std::size_t Tensor::size() const { return impl_ ? impl_->data.size() : 0; }

std::span<const double> Tensor::data() const {
  if (!impl_) throw UsageError("use of undefined tensor");
  return impl_->data;
}

std::span<double> Tensor::mutable_data() {
  if (!impl_) throw UsageError("use of undefined tensor");
  return impl_->data;
}

double Tensor::item() const {
  if (size() != 1) {
    throw UsageError("item() on tensor of shape " + ShapeToString(shape()));
  }
  return impl_->data[0];
}

double Tensor::at(std::initializer_list<std::size_t> index) const {
  const Shape& s = shape();
  if (index.size() != s.size()) throw DimensionError("index rank mismatch");
  std::size_t flat = 0, i = 0;
  for (std::size_t v : index) {
    if (v >= s[i]) throw DimensionError("index out of range");
    flat = flat * s[i] + v;
    ++i;
  }
  return impl_->data[flat];
}

bool Tensor::requires_grad() const { return impl_ && impl_->requires_grad; }

bool Tensor::has_grad() const { return impl_ && !impl_->grad.empty(); }

std::span<const double> Tensor::grad() const {
  if (!impl_) return {};
  return impl_->grad;
}

std::span<double> Tensor::mutable_grad() {
  if (!impl_) throw UsageError("use of undefined tensor");
  return impl_->GradBuffer();
}

void Tensor::ZeroGrad() {
  if (impl_ && !impl_->grad.empty()) {
    std::fill(impl_->grad.begin(), impl_->grad.end(), 0.0);
  }
}

bool Tensor::is_leaf() const { return impl_ && !impl_->node; }

std::string Tensor::op_name() const {
  return impl_ && impl_->node ? impl_->node->op : std::string("leaf");
}

Tensor Tensor::Detach() const {
  return FromData(shape(), impl_->data, false);
}

bool GradEnabled() { return grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(grad_enabled) { grad_enabled = false; }
NoGradGuard::~NoGradGuard() { grad_enabled = previous_; }

Tensor MakeResult(const std::string& op, Shape shape, std::vector<double> data,
                  const std::vector<Tensor>& inputs,
                  std::function<void(std::span<const double>)> backward) {
  Tensor out = Tensor::FromData(shape, std::move(data), false);
  if (!grad_enabled) return out;
  bool any = std::any_of(inputs.begin(), inputs.end(),
                         [](const Tensor& t) { return t.requires_grad(); });
  if (!any) return out;
  auto node = std::make_shared<Node>();
  node->op = op;
  for (const Tensor& t : inputs) node->parents.push_back(t.impl());
  node->backward = std::move(backward);
  out.impl()->requires_grad = true;
  out.impl()->node = std::move(node);
  return out;
}

void Backward(const Tensor& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw UsageError("backward requires a scalar loss, got " +
                     (loss.defined() ? ShapeToString(loss.shape())
                                     : std::string("undefined")));
  }
  if (!loss.requires_grad()) {
    throw UsageError("backward on a tensor without lineage");
  }

  // Iterative post-order DFS; reversing it yields a topological order from
  // the loss towards the leaves.
  std::vector<TensorImpl*> order;
  std::unordered_set<TensorImpl*> visited;
  std::vector<std::pair<TensorImpl*, std::size_t>> stack;
  stack.emplace_back(loss.impl().get(), 0);
  visited.insert(loss.impl().get());
  while (!stack.empty()) {
    auto& [impl, next] = stack.back();
    if (impl->node && next < impl->node->parents.size()) {
      TensorImpl* parent = impl->node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) {
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(impl);
      stack.pop_back();
    }
  }

  loss.impl()->GradBuffer()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TensorImpl* impl = *it;
    if (impl->node && !impl->grad.empty()) impl->node->backward(impl->grad);
  }
}

}  // namespace dksv
