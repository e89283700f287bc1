// src/numerics/ops.cc

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

#include "numerics/ops.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "base/error.h"
#include "numerics/kernels.h"

namespace dksv {

namespace {

using ImplPtr = std::shared_ptr<TensorImpl>;

// Gradient buffer of an input, or nullptr if it does not take gradients.
inline double* GradOf(const ImplPtr& impl) {
  return impl->requires_grad ? impl->GradBuffer().data() : nullptr;
}

void RequireRank(const Tensor& t, std::size_t rank, const char* op,
                 const char* what) {
  if (t.rank() != rank) {
    throw DimensionError(std::string(op) + ": " + what + " must have rank " +
                         std::to_string(rank) + ", got " +
                         ShapeToString(t.shape()));
  }
}

void RequireSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         ShapeToString(a.shape()) + " vs " +
                         ShapeToString(b.shape()));
  }
}

// Splits a shape around `axis` into (outer, extent, inner).
struct AxisSplit {
  std::size_t outer = 1, extent = 1, inner = 1;
};

AxisSplit SplitAt(const Shape& shape, std::size_t axis) {
  if (axis >= shape.size()) {
    throw DimensionError("axis " + std::to_string(axis) + " invalid for " +
                         ShapeToString(shape));
  }
  AxisSplit s;
  for (std::size_t i = 0; i < axis; ++i) s.outer *= shape[i];
  s.extent = shape[axis];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) s.inner *= shape[i];
  return s;
}

template <typename F, typename G>
Tensor Unary(const char* op, const Tensor& x, F forward, G derivative) {
  std::vector<double> y(x.size());
  auto xs = x.data();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = forward(xs[i]);
  ImplPtr xi = x.impl();
  // derivative(x, y) -> dy/dx
  auto yv = std::make_shared<std::vector<double>>(y);
  return MakeResult(op, x.shape(), std::move(y), {x},
                    [xi, yv, derivative](std::span<const double> g) {
                      double* gx = GradOf(xi);
                      if (!gx) return;
                      for (std::size_t i = 0; i < g.size(); ++i) {
                        gx[i] += g[i] * derivative(xi->data[i], (*yv)[i]);
                      }
                    });
}

}  // namespace

Tensor Conv1d(const Tensor& input, const Tensor& kernel, const Tensor& bias,
              std::size_t dilation) {
  if (input.rank() == 2) {
    if (kernel.rank() != 3) {
      throw DimensionError("conv1d: unbatched input needs a [Cout x Cin x k] kernel");
    }
    Tensor x3 = Reshape(input, {1, input.dim(0), input.dim(1)});
    Tensor y3 = Conv1d(x3, kernel, bias, dilation);
    return Reshape(y3, {y3.dim(1), y3.dim(2)});
  }
  RequireRank(input, 3, "conv1d", "input");
  if (kernel.rank() != 3 && kernel.rank() != 4) {
    throw DimensionError("conv1d: kernel must have rank 3 or 4, got " +
                         ShapeToString(kernel.shape()));
  }
  if (dilation == 0) throw ConfigError("conv1d: dilation must be positive");

  kernels::Conv1dDims d;
  d.per_batch_weight = kernel.rank() == 4;
  const std::size_t off = d.per_batch_weight ? 1 : 0;
  d.batch = input.dim(0);
  d.in_channels = input.dim(1);
  d.time = input.dim(2);
  d.out_channels = kernel.dim(off);
  d.kernel = kernel.dim(off + 2);
  d.dilation = dilation;
  if (d.kernel % 2 == 0) {
    throw ConfigError("conv1d: kernel size must be odd, got " +
                      std::to_string(d.kernel));
  }
  if (kernel.dim(off + 1) != d.in_channels) {
    throw DimensionError("conv1d: input has " + std::to_string(d.in_channels) +
                         " channels but kernel expects " +
                         std::to_string(kernel.dim(off + 1)));
  }
  if (d.per_batch_weight && kernel.dim(0) != d.batch) {
    throw DimensionError("conv1d: per-batch kernel batch mismatch");
  }
  d.per_batch_bias = bias.rank() == 2;
  const Shape want_bias = d.per_batch_bias ? Shape{d.batch, d.out_channels}
                                           : Shape{d.out_channels};
  if (bias.shape() != want_bias) {
    throw DimensionError("conv1d: bias shape " + ShapeToString(bias.shape()) +
                         ", expected " + ShapeToString(want_bias));
  }

  std::vector<double> y(d.batch * d.out_channels * d.time);
  kernels::Conv1dForward(d, input.data(), kernel.data(), bias.data(), y);

  ImplPtr xi = input.impl(), wi = kernel.impl(), bi = bias.impl();
  return MakeResult(
      "conv1d", {d.batch, d.out_channels, d.time}, std::move(y),
      {input, kernel, bias}, [xi, wi, bi, d](std::span<const double> g) {
        if (xi->requires_grad) {
          kernels::Conv1dBackwardInput(d, g, wi->data, xi->GradBuffer());
        }
        if (wi->requires_grad) {
          kernels::Conv1dBackwardWeight(d, g, xi->data, wi->GradBuffer());
        }
        if (double* gb = GradOf(bi)) {
          for (std::size_t b = 0; b < d.batch; ++b) {
            for (std::size_t co = 0; co < d.out_channels; ++co) {
              double sum = 0.0;
              const double* gr = g.data() + (b * d.out_channels + co) * d.time;
              for (std::size_t t = 0; t < d.time; ++t) sum += gr[t];
              gb[(d.per_batch_bias ? b * d.out_channels : 0) + co] += sum;
            }
          }
        }
      });
}

Tensor Dense(const Tensor& input, const Tensor& weight, const Tensor& bias) {
  RequireRank(weight, 2, "dense", "weight");
  const std::size_t m = weight.dim(0), n = weight.dim(1);
  if (input.shape().back() != n) {
    throw DimensionError("dense: input trailing extent " +
                         std::to_string(input.shape().back()) +
                         " does not match weight " + ShapeToString(weight.shape()));
  }
  if (bias.shape() != Shape{m}) {
    throw DimensionError("dense: bias must be [" + std::to_string(m) + "]");
  }
  const std::size_t rows = input.size() / n;

  std::vector<double> wt(n * m);
  auto w = weight.data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) wt[j * m + i] = w[i * n + j];

  std::vector<double> y(rows * m);
  kernels::MatMul(rows, n, m, input.data(), wt, y);
  auto b = bias.data();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < m; ++i) y[r * m + i] += b[i];

  Shape out_shape = input.shape();
  out_shape.back() = m;
  ImplPtr xi = input.impl(), wi = weight.impl(), bi = bias.impl();
  auto wtp = std::make_shared<std::vector<double>>(std::move(wt));
  return MakeResult(
      "dense", out_shape, std::move(y), {input, weight, bias},
      [xi, wi, bi, wtp, rows, m, n](std::span<const double> g) {
        if (xi->requires_grad) {
          kernels::MatMulGradA(rows, n, m, g, *wtp, xi->GradBuffer());
        }
        if (wi->requires_grad) {
          std::vector<double> gwt(n * m, 0.0);
          kernels::MatMulGradB(rows, n, m, xi->data, g, gwt);
          auto& gw = wi->GradBuffer();
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) gw[i * n + j] += gwt[j * m + i];
        }
        if (double* gb = GradOf(bi)) {
          for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t i = 0; i < m; ++i) gb[i] += g[r * m + i];
        }
      });
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  RequireRank(a, 2, "matmul", "a");
  RequireRank(b, 2, "matmul", "b");
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k) {
    throw DimensionError("matmul: " + ShapeToString(a.shape()) + " * " +
                         ShapeToString(b.shape()));
  }
  std::vector<double> c(m * n);
  kernels::MatMul(m, k, n, a.data(), b.data(), c);
  ImplPtr ai = a.impl(), bi = b.impl();
  return MakeResult("matmul", {m, n}, std::move(c), {a, b},
                    [ai, bi, m, k, n](std::span<const double> g) {
                      if (ai->requires_grad)
                        kernels::MatMulGradA(m, k, n, g, bi->data, ai->GradBuffer());
                      if (bi->requires_grad)
                        kernels::MatMulGradB(m, k, n, ai->data, g, bi->GradBuffer());
                    });
}

Tensor Relu(const Tensor& x) {
  return Unary(
      "relu", x, [](double v) { return v > 0.0 ? v : 0.0; },
      [](double v, double) { return v > 0.0 ? 1.0 : 0.0; });
}

Tensor Sigmoid(const Tensor& x) {
  return Unary(
      "sigmoid", x,
      [](double v) {
        // Split by sign so exp never overflows.
        if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor Tanh(const Tensor& x) {
  return Unary(
      "tanh", x, [](double v) { return std::tanh(v); },
      [](double, double y) { return 1.0 - y * y; });
}

Tensor Log(const Tensor& x) {
  for (double v : x.data()) {
    if (!(v > 0.0)) throw NumericError("log of non-positive value");
  }
  return Unary(
      "log", x, [](double v) { return std::log(v); },
      [](double v, double) { return 1.0 / v; });
}

Tensor Softmax(const Tensor& x, std::size_t axis) {
  const AxisSplit s = SplitAt(x.shape(), axis);
  auto xs = x.data();
  std::vector<double> y(x.size());
  for (std::size_t o = 0; o < s.outer; ++o) {
    for (std::size_t in = 0; in < s.inner; ++in) {
      const std::size_t base = o * s.extent * s.inner + in;
      double mx = -INFINITY;
      for (std::size_t a = 0; a < s.extent; ++a)
        mx = std::max(mx, xs[base + a * s.inner]);
      double z = 0.0;
      for (std::size_t a = 0; a < s.extent; ++a) {
        const double e = std::exp(xs[base + a * s.inner] - mx);
        y[base + a * s.inner] = e;
        z += e;
      }
      for (std::size_t a = 0; a < s.extent; ++a) y[base + a * s.inner] /= z;
    }
  }
  ImplPtr xi = x.impl();
  auto yv = std::make_shared<std::vector<double>>(y);
  return MakeResult("softmax", x.shape(), std::move(y), {x},
                    [xi, yv, s](std::span<const double> g) {
                      double* gx = GradOf(xi);
                      if (!gx) return;
                      const auto& yy = *yv;
                      for (std::size_t o = 0; o < s.outer; ++o) {
                        for (std::size_t in = 0; in < s.inner; ++in) {
                          const std::size_t base = o * s.extent * s.inner + in;
                          double dot = 0.0;
                          for (std::size_t a = 0; a < s.extent; ++a) {
                            const std::size_t i = base + a * s.inner;
                            dot += g[i] * yy[i];
                          }
                          for (std::size_t a = 0; a < s.extent; ++a) {
                            const std::size_t i = base + a * s.inner;
                            gx[i] += yy[i] * (g[i] - dot);
                          }
                        }
                      }
                    });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "add");
  std::vector<double> y(a.size());
  auto as = a.data(), bs = b.data();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = as[i] + bs[i];
  ImplPtr ai = a.impl(), bi = b.impl();
  return MakeResult("add", a.shape(), std::move(y), {a, b},
                    [ai, bi](std::span<const double> g) {
                      // ai and bi may alias (x + x); each adds its share.
                      if (double* ga = GradOf(ai))
                        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
                      if (double* gb = GradOf(bi))
                        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
                    });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "sub");
  std::vector<double> y(a.size());
  auto as = a.data(), bs = b.data();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = as[i] - bs[i];
  ImplPtr ai = a.impl(), bi = b.impl();
  return MakeResult("sub", a.shape(), std::move(y), {a, b},
                    [ai, bi](std::span<const double> g) {
                      if (double* ga = GradOf(ai))
                        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
                      if (double* gb = GradOf(bi))
                        for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
                    });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "mul");
  std::vector<double> y(a.size());
  auto as = a.data(), bs = b.data();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = as[i] * bs[i];
  ImplPtr ai = a.impl(), bi = b.impl();
  return MakeResult("mul", a.shape(), std::move(y), {a, b},
                    [ai, bi](std::span<const double> g) {
                      if (double* ga = GradOf(ai))
                        for (std::size_t i = 0; i < g.size(); ++i)
                          ga[i] += g[i] * bi->data[i];
                      if (double* gb = GradOf(bi))
                        for (std::size_t i = 0; i < g.size(); ++i)
                          gb[i] += g[i] * ai->data[i];
                    });
}

Tensor Scale(const Tensor& x, double factor) {
  return Unary(
      "scale", x, [factor](double v) { return v * factor; },
      [factor](double, double) { return factor; });
}

Tensor Sum(const Tensor& x) {
  double s = 0.0;
  for (double v : x.data()) s += v;
  ImplPtr xi = x.impl();
  return MakeResult("sum", {1}, {s}, {x}, [xi](std::span<const double> g) {
    if (double* gx = GradOf(xi))
      for (std::size_t i = 0; i < xi->data.size(); ++i) gx[i] += g[0];
  });
}

Tensor Mean(const Tensor& x) { return Scale(Sum(x), 1.0 / x.size()); }

Tensor Dot(const Tensor& x, std::span<const double> weights) {
  if (weights.size() != x.size()) throw DimensionError("dot: size mismatch");
  double s = 0.0;
  auto xs = x.data();
  for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i] * weights[i];
  ImplPtr xi = x.impl();
  auto w = std::make_shared<std::vector<double>>(weights.begin(), weights.end());
  return MakeResult("dot", {1}, {s}, {x}, [xi, w](std::span<const double> g) {
    if (double* gx = GradOf(xi))
      for (std::size_t i = 0; i < w->size(); ++i) gx[i] += g[0] * (*w)[i];
  });
}

Tensor Reshape(const Tensor& x, const Shape& shape) {
  if (NumElements(shape) != x.size()) {
    throw DimensionError("reshape: " + ShapeToString(x.shape()) + " -> " +
                         ShapeToString(shape));
  }
  std::vector<double> y(x.data().begin(), x.data().end());
  ImplPtr xi = x.impl();
  return MakeResult("reshape", shape, std::move(y), {x},
                    [xi](std::span<const double> g) {
                      if (double* gx = GradOf(xi))
                        for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
                    });
}

Tensor Concat(const std::vector<Tensor>& parts, std::size_t axis) {
  if (parts.empty()) throw DimensionError("concat: no inputs");
  Shape out_shape = parts[0].shape();
  const AxisSplit first = SplitAt(out_shape, axis);
  std::size_t total = 0;
  std::vector<std::size_t> extents;
  for (const Tensor& p : parts) {
    Shape a = p.shape(), b = out_shape;
    if (a.size() != b.size()) throw DimensionError("concat: rank mismatch");
    a[axis] = b[axis] = 0;
    if (a != b) {
      throw DimensionError("concat: incompatible " + ShapeToString(p.shape()) +
                           " and " + ShapeToString(out_shape));
    }
    extents.push_back(p.dim(axis));
    total += p.dim(axis);
  }
  out_shape[axis] = total;
  const std::size_t outer = first.outer, inner = first.inner;
  std::vector<double> y(outer * total * inner);
  std::size_t offset = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    auto src = parts[p].data();
    const std::size_t chunk = extents[p] * inner;
    for (std::size_t o = 0; o < outer; ++o) {
      std::copy_n(src.data() + o * chunk, chunk,
                  y.data() + (o * total + offset) * inner);
    }
    offset += extents[p];
  }
  std::vector<ImplPtr> impls;
  for (const Tensor& p : parts) impls.push_back(p.impl());
  return MakeResult("concat", out_shape, std::move(y), parts,
                    [impls, extents, outer, inner, total](std::span<const double> g) {
                      std::size_t offset = 0;
                      for (std::size_t p = 0; p < impls.size(); ++p) {
                        const std::size_t chunk = extents[p] * inner;
                        if (double* gp = GradOf(impls[p])) {
                          for (std::size_t o = 0; o < outer; ++o) {
                            const double* src = g.data() + (o * total + offset) * inner;
                            for (std::size_t i = 0; i < chunk; ++i)
                              gp[o * chunk + i] += src[i];
                          }
                        }
                        offset += extents[p];
                      }
                    });
}

Tensor Slice(const Tensor& x, std::size_t axis, std::size_t start,
             std::size_t length) {
  const AxisSplit s = SplitAt(x.shape(), axis);
  if (length == 0 || start + length > s.extent) {
    throw DimensionError("slice: [" + std::to_string(start) + ", " +
                         std::to_string(start + length) + ") outside axis of extent " +
                         std::to_string(s.extent));
  }
  Shape out_shape = x.shape();
  out_shape[axis] = length;
  std::vector<double> y(s.outer * length * s.inner);
  auto xs = x.data();
  for (std::size_t o = 0; o < s.outer; ++o) {
    std::copy_n(xs.data() + (o * s.extent + start) * s.inner, length * s.inner,
                y.data() + o * length * s.inner);
  }
  ImplPtr xi = x.impl();
  return MakeResult("slice", out_shape, std::move(y), {x},
                    [xi, s, start, length](std::span<const double> g) {
                      double* gx = GradOf(xi);
                      if (!gx) return;
                      for (std::size_t o = 0; o < s.outer; ++o) {
                        double* dst = gx + (o * s.extent + start) * s.inner;
                        const double* src = g.data() + o * length * s.inner;
                        for (std::size_t i = 0; i < length * s.inner; ++i) dst[i] += src[i];
                      }
                    });
}

Tensor MeanTime(const Tensor& x) {
  RequireRank(x, 3, "mean_time", "input");
  const std::size_t rows = x.dim(0) * x.dim(1), T = x.dim(2);
  std::vector<double> y(rows);
  auto xs = x.data();
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t t = 0; t < T; ++t) s += xs[r * T + t];
    y[r] = s / T;
  }
  ImplPtr xi = x.impl();
  return MakeResult("mean_time", {x.dim(0), x.dim(1)}, std::move(y), {x},
                    [xi, rows, T](std::span<const double> g) {
                      if (double* gx = GradOf(xi))
                        for (std::size_t r = 0; r < rows; ++r)
                          for (std::size_t t = 0; t < T; ++t) gx[r * T + t] += g[r] / T;
                    });
}

Tensor BroadcastTime(const Tensor& x, std::size_t time) {
  RequireRank(x, 2, "broadcast_time", "input");
  const std::size_t rows = x.size();
  std::vector<double> y(rows * time);
  auto xs = x.data();
  for (std::size_t r = 0; r < rows; ++r)
    std::fill_n(y.data() + r * time, time, xs[r]);
  ImplPtr xi = x.impl();
  return MakeResult("broadcast_time", {x.dim(0), x.dim(1), time}, std::move(y), {x},
                    [xi, rows, time](std::span<const double> g) {
                      if (double* gx = GradOf(xi))
                        for (std::size_t r = 0; r < rows; ++r) {
                          double s = 0.0;
                          for (std::size_t t = 0; t < time; ++t) s += g[r * time + t];
                          gx[r] += s;
                        }
                    });
}

Tensor ScaleChannels(const Tensor& x, const Tensor& gate) {
  RequireRank(x, 3, "scale_channels", "input");
  if (gate.shape() != Shape{x.dim(0), x.dim(1)}) {
    throw DimensionError("scale_channels: gate " + ShapeToString(gate.shape()) +
                         " for input " + ShapeToString(x.shape()));
  }
  const std::size_t rows = gate.size(), T = x.dim(2);
  std::vector<double> y(x.size());
  auto xs = x.data();
  auto gs = gate.data();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t t = 0; t < T; ++t) y[r * T + t] = gs[r] * xs[r * T + t];
  ImplPtr xi = x.impl(), gi = gate.impl();
  return MakeResult("scale_channels", x.shape(), std::move(y), {x, gate},
                    [xi, gi, rows, T](std::span<const double> g) {
                      if (double* gx = GradOf(xi))
                        for (std::size_t r = 0; r < rows; ++r)
                          for (std::size_t t = 0; t < T; ++t)
                            gx[r * T + t] += g[r * T + t] * gi->data[r];
                      if (double* gg = GradOf(gi))
                        for (std::size_t r = 0; r < rows; ++r) {
                          double s = 0.0;
                          for (std::size_t t = 0; t < T; ++t)
                            s += g[r * T + t] * xi->data[r * T + t];
                          gg[r] += s;
                        }
                    });
}

std::pair<Tensor, Tensor> WeightedMoments(const Tensor& h, const Tensor& weights) {
  RequireRank(h, 3, "weighted_moments", "h");
  const std::size_t B = h.dim(0), C = h.dim(1), T = h.dim(2);
  // Stride of the weight tensor over (b, c); time is always contiguous.
  std::size_t wb = 0, wc = 0;
  if (weights.shape() == Shape{T}) {
  } else if (weights.shape() == Shape{C, T}) {
    wc = T;
  } else if (weights.shape() == h.shape()) {
    wc = T;
    wb = C * T;
  } else {
    throw DimensionError("weighted_moments: weights " +
                         ShapeToString(weights.shape()) + " for h " +
                         ShapeToString(h.shape()));
  }
  auto hs = h.data();
  auto ws = weights.data();
  std::vector<double> mean(B * C), stddev(B * C);
  auto var = std::make_shared<std::vector<double>>(B * C);
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t c = 0; c < C; ++c) {
      const double* hr = hs.data() + (b * C + c) * T;
      const double* wr = ws.data() + b * wb + c * wc;
      double m1 = 0.0, m2 = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        m1 += wr[t] * hr[t];
        m2 += wr[t] * hr[t] * hr[t];
      }
      const double v = m2 - m1 * m1;
      mean[b * C + c] = m1;
      (*var)[b * C + c] = v;
      stddev[b * C + c] = std::sqrt(std::max(0.0, v));
    }
  }
  ImplPtr hi = h.impl(), wi = weights.impl();
  Tensor mean_t = MakeResult(
      "weighted_mean", {B, C}, mean, {h, weights},
      [hi, wi, B, C, T, wb, wc](std::span<const double> g) {
        double* gh = GradOf(hi);
        double* gw = GradOf(wi);
        for (std::size_t b = 0; b < B; ++b)
          for (std::size_t c = 0; c < C; ++c) {
            const std::size_t r = b * C + c;
            const double* wr = wi->data.data() + b * wb + c * wc;
            const double* hr = hi->data.data() + r * T;
            for (std::size_t t = 0; t < T; ++t) {
              if (gh) gh[r * T + t] += g[r] * wr[t];
              if (gw) gw[b * wb + c * wc + t] += g[r] * hr[t];
            }
          }
      });
  auto meanv = std::make_shared<std::vector<double>>(std::move(mean));
  auto stdv = std::make_shared<std::vector<double>>(stddev);
  Tensor std_t = MakeResult(
      "weighted_std", {B, C}, std::move(stddev), {h, weights},
      [hi, wi, B, C, T, wb, wc, meanv, stdv, var](std::span<const double> g) {
        double* gh = GradOf(hi);
        double* gw = GradOf(wi);
        for (std::size_t b = 0; b < B; ++b)
          for (std::size_t c = 0; c < C; ++c) {
            const std::size_t r = b * C + c;
            if ((*var)[r] <= 0.0 || (*stdv)[r] == 0.0) continue;  // clamped
            const double scale = g[r] / (2.0 * (*stdv)[r]);
            const double mu = (*meanv)[r];
            const double* wr = wi->data.data() + b * wb + c * wc;
            const double* hr = hi->data.data() + r * T;
            for (std::size_t t = 0; t < T; ++t) {
              if (gh) gh[r * T + t] += scale * 2.0 * wr[t] * (hr[t] - mu);
              if (gw) gw[b * wb + c * wc + t] += scale * hr[t] * (hr[t] - 2.0 * mu);
            }
          }
      });
  return {mean_t, std_t};
}

std::pair<Tensor, Tensor> StatPoolMoments(const Tensor& h, const Tensor& weights) {
  RequireRank(h, 2, "stat_pool_moments", "h");
  if (weights.shape() != Shape{h.dim(1)}) {
    throw DimensionError("stat_pool_moments: weights must be [T]");
  }
  double sum = 0.0;
  for (double w : weights.data()) {
    if (w < 0.0) throw NumericError("stat_pool_moments: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-4) {
    throw NumericError("stat_pool_moments: weights sum to " + std::to_string(sum));
  }
  auto [mean, stddev] =
      WeightedMoments(Reshape(h, {1, h.dim(0), h.dim(1)}), weights);
  return {Reshape(mean, {h.dim(0)}), Reshape(stddev, {h.dim(0)})};
}

Tensor CrossEntropy(const Tensor& logits, std::span<const int> labels) {
  RequireRank(logits, 2, "cross_entropy", "logits");
  const std::size_t B = logits.dim(0), S = logits.dim(1);
  if (labels.size() != B) {
    throw DimensionError("cross_entropy: " + std::to_string(labels.size()) +
                         " labels for batch of " + std::to_string(B));
  }
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= S) {
      throw InputError("cross_entropy: label " + std::to_string(l) +
                       " outside [0, " + std::to_string(S) + ")");
    }
  }
  auto z = logits.data();
  auto probs = std::make_shared<std::vector<double>>(B * S);
  double loss = 0.0;
  for (std::size_t b = 0; b < B; ++b) {
    const double* zr = z.data() + b * S;
    const double mx = *std::max_element(zr, zr + S);
    double sum = 0.0;
    for (std::size_t s = 0; s < S; ++s) sum += std::exp(zr[s] - mx);
    const double lse = mx + std::log(sum);
    for (std::size_t s = 0; s < S; ++s) (*probs)[b * S + s] = std::exp(zr[s] - lse);
    loss += lse - zr[labels[b]];
  }
  loss /= B;
  ImplPtr li = logits.impl();
  std::vector<int> lab(labels.begin(), labels.end());
  return MakeResult("cross_entropy", {1}, {loss}, {logits},
                    [li, probs, lab, B, S](std::span<const double> g) {
                      double* gl = GradOf(li);
                      if (!gl) return;
                      const double scale = g[0] / B;
                      for (std::size_t b = 0; b < B; ++b)
                        for (std::size_t s = 0; s < S; ++s) {
                          const double onehot = static_cast<int>(s) == lab[b] ? 1.0 : 0.0;
                          gl[b * S + s] += scale * ((*probs)[b * S + s] - onehot);
                        }
                    });
}

}  // namespace dksv
