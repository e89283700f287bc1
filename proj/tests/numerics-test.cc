// tests/numerics-test.cc

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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "base/error.h"
#include "grad-check.h"
#include "numerics/adam.h"
#include "numerics/batch-norm.h"
#include "numerics/kernels.h"
#include "numerics/ops.h"
#include "numerics/param-archive.h"

using namespace dksv;
using dksv::testing::GradCheck;
using dksv::testing::RandomTensor;
using dksv::testing::RandomVector;

namespace {

// Direct transcription of the "same"-padded dilated convolution sum.
std::vector<double> ConvOracle(const std::vector<double>& x, std::size_t cin,
                               std::size_t T, const std::vector<double>& w,
                               std::size_t cout, std::size_t k,
                               const std::vector<double>& b, std::size_t dil) {
  const long pad = static_cast<long>(dil * (k - 1) / 2);
  std::vector<double> y(cout * T);
  for (std::size_t c = 0; c < cout; ++c)
    for (std::size_t t = 0; t < T; ++t) {
      double s = b[c];
      for (std::size_t i = 0; i < cin; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          long src = static_cast<long>(t) + static_cast<long>(j * dil) - pad;
          double xv = (src >= 0 && src < static_cast<long>(T)) ? x[i * T + src] : 0.0;
          s += w[(c * cin + i) * k + j] * xv;
        }
      y[c * T + t] = s;
    }
  return y;
}

std::vector<double> ToVec(const Tensor& t) { return {t.data().begin(), t.data().end()}; }

}  // namespace

TEST_CASE("backward of sum gives ones") {
  Tensor x = Tensor::FromData({2, 3}, {1, 2, 3, 4, 5, 6}, true);
  Backward(Sum(x));
  for (double g : x.grad()) CHECK(g == 1.0);
}

TEST_CASE("backward through relu") {
  Tensor x = Tensor::FromData({2}, {-1.0, 2.0}, true);
  Backward(Sum(Relu(x)));
  CHECK(x.grad()[0] == 0.0);
  CHECK(x.grad()[1] == 1.0);
}

TEST_CASE("fan-out accumulates: y = x + x") {
  Tensor x = Tensor::FromData({3}, {0.5, -1.0, 2.0}, true);
  Backward(Sum(Add(x, x)));
  for (double g : x.grad()) CHECK(g == 2.0);
}

TEST_CASE("backward requires a scalar with lineage") {
  Tensor x = Tensor::FromData({2}, {1, 2}, true);
  CHECK_THROWS_AS(Backward(Relu(x)), UsageError);
  Tensor c = Tensor::FromData({1}, {1.0});
  CHECK_THROWS_AS(Backward(c), UsageError);
}

TEST_CASE("leaves without lineage are untouched") {
  Tensor x = Tensor::FromData({2}, {1, 2}, true);
  Tensor w = Tensor::FromData({2}, {3, 4}, false);
  Backward(Sum(Mul(x, w)));
  CHECK_FALSE(w.has_grad());
  CHECK(x.grad()[0] == 3.0);
}

TEST_CASE("no-grad guard records no graph") {
  Tensor x = Tensor::FromData({2}, {1, 2}, true);
  NoGradGuard guard;
  Tensor y = Relu(x);
  CHECK(y.is_leaf());
  CHECK_FALSE(y.requires_grad());
}

TEST_CASE("conv1d: zero input yields bias") {
  std::mt19937_64 rng(1);
  Tensor x = Tensor::Zeros({3, 7});
  Tensor w = RandomTensor({2, 3, 3}, rng);
  Tensor b = Tensor::FromData({2}, {0.25, -1.5});
  Tensor y = Conv1d(x, w, b, 2);
  for (std::size_t t = 0; t < 7; ++t) {
    CHECK(y.at({0, t}) == 0.25);
    CHECK(y.at({1, t}) == -1.5);
  }
}

TEST_CASE("conv1d: k=1 identity kernel is the identity") {
  std::mt19937_64 rng(2);
  Tensor x = RandomTensor({4, 9}, rng);
  std::vector<double> eye(16, 0.0);
  for (int i = 0; i < 4; ++i) eye[i * 4 + i] = 1.0;
  Tensor y = Conv1d(x, Tensor::FromData({4, 4, 1}, eye), Tensor::Zeros({4}));
  CHECK(ToVec(y) == ToVec(x));
}

TEST_CASE("conv1d matches nested-loop oracle") {
  std::mt19937_64 rng(3);
  for (std::size_t dil : {1, 2, 3}) {
    Tensor x = RandomTensor({3, 8}, rng);
    Tensor w = RandomTensor({2, 3, 3}, rng);
    Tensor b = RandomTensor({2}, rng);
    auto want = ConvOracle(ToVec(x), 3, 8, ToVec(w), 2, 3, ToVec(b), dil);
    auto got = ToVec(Conv1d(x, w, b, dil));
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("conv1d errors") {
  Tensor x = Tensor::Zeros({3, 8});
  CHECK_THROWS_AS(Conv1d(x, Tensor::Zeros({2, 3, 2}), Tensor::Zeros({2})), ConfigError);
  CHECK_THROWS_AS(Conv1d(x, Tensor::Zeros({2, 4, 3}), Tensor::Zeros({2})), DimensionError);
  CHECK_THROWS_AS(Conv1d(x, Tensor::Zeros({2, 3, 3}), Tensor::Zeros({3})), DimensionError);
}

TEST_CASE("conv1d preserves time length for odd k and any dilation") {
  std::mt19937_64 rng(4);
  for (std::size_t k : {1, 3, 5, 7})
    for (std::size_t dil : {1, 2, 3, 4})
      for (std::size_t T : {1, 2, 5, 17}) {
        Tensor y = Conv1d(RandomTensor({2, 3, T}, rng), RandomTensor({4, 3, k}, rng),
                          RandomTensor({4}, rng), dil);
        CHECK(y.shape() == Shape{2, 4, T});
      }
}

TEST_CASE("conv1d is linear in (kernel, bias)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int rep = 0; rep < 20; ++rep) {
    Tensor x = RandomTensor({2, 3, 11}, rng);
    Tensor k1 = RandomTensor({4, 3, 3}, rng), k2 = RandomTensor({4, 3, 3}, rng);
    Tensor b1 = RandomTensor({4}, rng), b2 = RandomTensor({4}, rng);
    const double a = u(rng), c = u(rng);
    auto lhs = ToVec(Conv1d(x, Add(Scale(k1, a), Scale(k2, c)),
                            Add(Scale(b1, a), Scale(b2, c)), 2));
    auto y1 = ToVec(Conv1d(x, k1, b1, 2)), y2 = ToVec(Conv1d(x, k2, b2, 2));
    for (std::size_t i = 0; i < lhs.size(); ++i)
      CHECK(std::abs(lhs[i] - (a * y1[i] + c * y2[i])) < 1e-10);
  }
}

TEST_CASE("parallel kernels agree with the serial reference") {
  std::mt19937_64 rng(6);
  for (bool per_batch : {false, true}) {
    kernels::Conv1dDims d;
    d.batch = 3;
    d.in_channels = 5;
    d.out_channels = 4;
    d.time = 13;
    d.kernel = 3;
    d.dilation = 2;
    d.per_batch_weight = d.per_batch_bias = per_batch;
    auto x = RandomVector(d.batch * d.in_channels * d.time, rng);
    auto w = RandomVector((per_batch ? d.batch : 1) * d.weight_stride(), rng);
    auto b = RandomVector((per_batch ? d.batch : 1) * d.out_channels, rng);
    auto gy = RandomVector(d.batch * d.out_channels * d.time, rng);
    std::vector<double> y1(gy.size()), y2(gy.size());
    kernels::reference::Conv1dForward(d, x, w, b, y1);
    kernels::parallel::Conv1dForward(d, x, w, b, y2);
    CHECK(y1 == y2);  // same accumulation order per output
    std::vector<double> gx1(x.size()), gx2(x.size()), gw1(w.size()), gw2(w.size());
    kernels::reference::Conv1dBackwardInput(d, gy, w, gx1);
    kernels::parallel::Conv1dBackwardInput(d, gy, w, gx2);
    kernels::reference::Conv1dBackwardWeight(d, gy, x, gw1);
    kernels::parallel::Conv1dBackwardWeight(d, gy, x, gw2);
    for (std::size_t i = 0; i < gx1.size(); ++i) CHECK(gx1[i] == doctest::Approx(gx2[i]).epsilon(1e-12));
    CHECK(gw1 == gw2);
  }
  auto a = RandomVector(6 * 7, rng), bm = RandomVector(7 * 5, rng), gc = RandomVector(6 * 5, rng);
  std::vector<double> c1(30), c2(30), ga1(42), ga2(42), gb1(35), gb2(35);
  kernels::reference::MatMul(6, 7, 5, a, bm, c1);
  kernels::parallel::MatMul(6, 7, 5, a, bm, c2);
  kernels::reference::MatMulGradA(6, 7, 5, gc, bm, ga1);
  kernels::parallel::MatMulGradA(6, 7, 5, gc, bm, ga2);
  kernels::reference::MatMulGradB(6, 7, 5, a, gc, gb1);
  kernels::parallel::MatMulGradB(6, 7, 5, a, gc, gb2);
  CHECK(c1 == c2);
  CHECK(ga1 == ga2);
  CHECK(gb1 == gb2);
}

TEST_CASE("dense: identity and hand arithmetic") {
  std::mt19937_64 rng(7);
  Tensor x = RandomTensor({3, 4}, rng);
  std::vector<double> eye(16, 0.0);
  for (int i = 0; i < 4; ++i) eye[i * 5] = 1.0;
  CHECK(ToVec(Dense(x, Tensor::FromData({4, 4}, eye), Tensor::Zeros({4}))) == ToVec(x));

  Tensor y = Dense(Tensor::FromData({2}, {1, 2}), Tensor::FromData({2, 2}, {1, 1, 1, -1}),
                   Tensor::Zeros({2}));
  CHECK(y.data()[0] == 3.0);
  CHECK(y.data()[1] == -1.0);
}

TEST_CASE("dense matches dot-product oracle") {
  std::mt19937_64 rng(8);
  Tensor x = RandomTensor({4, 5}, rng);
  Tensor w = RandomTensor({3, 5}, rng);
  Tensor b = RandomTensor({3}, rng);
  Tensor y = Dense(x, w, b);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t m = 0; m < 3; ++m) {
      double s = b.data()[m];
      for (std::size_t n = 0; n < 5; ++n) s += x.at({r, n}) * w.at({m, n});
      CHECK(std::abs(y.at({r, m}) - s) < 1e-12);
    }
  CHECK_THROWS_AS(Dense(RandomTensor({4, 6}, rng), w, b), DimensionError);
}

TEST_CASE("activations") {
  Tensor s = Softmax(Tensor::Zeros({4}), 0);
  for (double v : s.data()) CHECK(v == 0.25);
  Tensor r = Relu(Tensor::FromData({3}, {-1, 0, 2}));
  CHECK(ToVec(r) == std::vector<double>{0, 0, 2});
  Tensor big = Softmax(Tensor::FromData({2}, {1000.0, 1000.0 + std::log(2.0)}), 0);
  CHECK(std::abs(big.data()[0] - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(big.data()[1] - 2.0 / 3.0) < 1e-12);
  Tensor sg = Sigmoid(Tensor::FromData({3}, {-800.0, 0.0, 800.0}));
  CHECK(sg.data()[0] == 0.0);
  CHECK(sg.data()[1] == 0.5);
  CHECK(sg.data()[2] == 1.0);
}

TEST_CASE("softmax slices lie on the simplex") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    Tensor x = RandomTensor({3, 5, 4}, rng, -30, 30);
    for (std::size_t axis = 0; axis < 3; ++axis) {
      Tensor y = Softmax(x, axis);
      const Shape& sh = y.shape();
      for (std::size_t i = 0; i < sh[0]; ++i)
        for (std::size_t j = 0; j < sh[1]; ++j)
          for (std::size_t k = 0; k < sh[2]; ++k) {
            double v = y.at({i, j, k});
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
          }
      double total = 0.0;
      for (double v : y.data()) total += v;
      const double slices = static_cast<double>(y.size() / sh[axis]);
      CHECK(std::abs(total - slices) < 1e-6 * slices);
    }
  }
}

TEST_CASE("batch norm normalizes in training mode") {
  std::mt19937_64 rng(10);
  BatchNorm bn(3);
  Tensor x = RandomTensor({4, 3, 20}, rng, -3, 5);
  Tensor y = bn.Forward(x, true);
  for (std::size_t c = 0; c < 3; ++c) {
    double m = 0, v = 0;
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t t = 0; t < 20; ++t) m += y.at({b, c, t});
    m /= 80;
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t t = 0; t < 20; ++t) v += std::pow(y.at({b, c, t}) - m, 2);
    v /= 80;
    CHECK(std::abs(m) < 1e-6);
    CHECK(std::abs(v - 1.0) < 1e-4);  // eps = 1e-5 shrinks the variance slightly
  }
}

TEST_CASE("batch norm of a constant channel is zero") {
  BatchNorm bn(2);
  Tensor x = Tensor::Filled({3, 2, 5}, 7.25);
  Tensor y = bn.Forward(x, true);
  for (double v : y.data()) CHECK(v == 0.0);
}

TEST_CASE("batch norm running statistics follow the momentum recurrence") {
  std::mt19937_64 rng(11);
  BatchNormOptions opt;
  opt.momentum = 0.3;
  BatchNorm bn(1, opt);
  double rm = 0.0, rv = 1.0;
  for (int step = 0; step < 2; ++step) {
    Tensor x = RandomTensor({2, 1, 6}, rng, -1, 4);
    double m = 0, v = 0;
    for (double d : x.data()) m += d;
    m /= 12;
    for (double d : x.data()) v += (d - m) * (d - m);
    v /= 12;
    rm = 0.7 * rm + 0.3 * m;
    rv = 0.7 * rv + 0.3 * v;
    bn.Forward(x, true);
  }
  CHECK(std::abs(bn.running_mean()[0] - rm) < 1e-14);
  CHECK(std::abs(bn.running_var()[0] - rv) < 1e-14);
  BatchNormOptions bad;
  bad.eps = 0.0;
  CHECK_THROWS_AS(BatchNorm(2, bad), ConfigError);
}

TEST_CASE("stat pool moments") {
  std::mt19937_64 rng(12);
  // Constant channels.
  Tensor h = Tensor::FromData({2, 4}, {3, 3, 3, 3, -1, -1, -1, -1});
  Tensor w = Tensor::FromData({4}, {0.1, 0.2, 0.3, 0.4});
  auto [m, s] = StatPoolMoments(h, w);
  CHECK(m.data()[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(m.data()[1] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s.data()[0] < 1e-7);
  CHECK(s.data()[1] < 1e-7);

  // Uniform weights reduce to the population mean/std.
  Tensor h2 = RandomTensor({4, 10}, rng);
  auto [m2, s2] = StatPoolMoments(h2, Tensor::Filled({10}, 0.1));
  for (std::size_t c = 0; c < 4; ++c) {
    double mu = 0, var = 0;
    for (std::size_t t = 0; t < 10; ++t) mu += h2.at({c, t});
    mu /= 10;
    for (std::size_t t = 0; t < 10; ++t) var += std::pow(h2.at({c, t}) - mu, 2);
    var /= 10;
    CHECK(std::abs(m2.data()[c] - mu) < 1e-12);
    CHECK(std::abs(s2.data()[c] - std::sqrt(var)) < 1e-12);
  }

  // Random simplex weights against a two-pass loop oracle.
  std::vector<double> wv = RandomVector(10, rng);
  double total = 0;
  for (double& x : wv) total += (x = std::abs(x) + 0.01);
  for (double& x : wv) x /= total;
  auto [m3, s3] = StatPoolMoments(h2, Tensor::FromData({10}, wv));
  for (std::size_t c = 0; c < 4; ++c) {
    double mu = 0, var = 0;
    for (std::size_t t = 0; t < 10; ++t) mu += wv[t] * h2.at({c, t});
    for (std::size_t t = 0; t < 10; ++t) var += wv[t] * std::pow(h2.at({c, t}) - mu, 2);
    CHECK(std::abs(m3.data()[c] - mu) < 1e-12);
    CHECK(std::abs(s3.data()[c] - std::sqrt(var)) < 1e-12);
  }

  CHECK_THROWS_AS(StatPoolMoments(h2, Tensor::Filled({10}, 0.2)), NumericError);
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  Tensor p = Tensor::FromData({3}, {1, -2, 3}, true);
  Adam opt({p});
  p.mutable_grad();  // zeros
  opt.Step(0.1);
  CHECK(ToVec(p) == std::vector<double>{1, -2, 3});
  CHECK(opt.state().step == 1);
}

TEST_CASE("adam: first step moves by lr") {
  Tensor p = Tensor::FromData({1}, {0.5}, true);
  Adam opt({p});
  p.mutable_grad()[0] = 1.0;
  opt.Step(0.01);
  CHECK(std::abs(p.data()[0] - (0.5 - 0.01)) < 1e-9);
}

TEST_CASE("adam: trajectory on theta^2 matches scalar oracle") {
  Tensor p = Tensor::FromData({1}, {1.0}, true);
  Adam opt({p});
  double theta = 1.0, m = 0.0, v = 0.0;
  for (int t = 1; t <= 10; ++t) {
    opt.ZeroGrad();
    Backward(Sum(Mul(p, p)));
    opt.Step(0.1);
    const double g = 2.0 * theta;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    theta -= 0.1 * (m / (1.0 - std::pow(0.9, t))) /
             (std::sqrt(v / (1.0 - std::pow(0.999, t))) + 1e-8);
    CHECK(std::abs(p.data()[0] - theta) < 1e-12);
  }
}

TEST_CASE("adam: non-finite gradient skips the parameter") {
  Tensor a = Tensor::FromData({1}, {1.0}, true);
  Tensor b = Tensor::FromData({1}, {1.0}, true);
  Adam opt({a, b});
  a.mutable_grad()[0] = std::nan("");
  b.mutable_grad()[0] = 1.0;
  CHECK(opt.Step(0.1) == 1);
  CHECK(a.data()[0] == 1.0);
  CHECK(b.data()[0] < 1.0);
  for (double v : opt.state().m[0]) CHECK(v == 0.0);
}

TEST_CASE("gradient checks for every primitive") {
  std::mt19937_64 rng(13);
  const double tol = 1e-4;
  for (int rep = 0; rep < 20; ++rep) {
    auto proj = RandomVector(64 * 64, rng);
    auto P = [&](const Tensor& t) { return Dot(t, std::span(proj).first(t.size())); };

    CHECK(GradCheck([&](auto& in) { return P(Conv1d(in[0], in[1], in[2], 2)); },
                    {RandomTensor({2, 3, 7}, rng), RandomTensor({4, 3, 3}, rng),
                     RandomTensor({4}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Conv1d(in[0], in[1], in[2], 1)); },
                    {RandomTensor({2, 3, 6}, rng), RandomTensor({2, 4, 3, 5}, rng),
                     RandomTensor({2, 4}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Dense(in[0], in[1], in[2])); },
                    {RandomTensor({2, 3, 5}, rng), RandomTensor({4, 5}, rng),
                     RandomTensor({4}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(MatMul(in[0], in[1])); },
                    {RandomTensor({3, 4}, rng), RandomTensor({4, 2}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Relu(in[0])); }, {RandomTensor({10}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Sigmoid(in[0])); }, {RandomTensor({10}, rng, -4, 4)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Tanh(in[0])); }, {RandomTensor({10}, rng, -2, 2)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Softmax(in[0], rep % 3)); },
                    {RandomTensor({2, 3, 4}, rng, -3, 3)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Mul(in[0], Add(in[0], in[1]))); },
                    {RandomTensor({6}, rng), RandomTensor({6}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(Sub(Scale(in[0], 1.7), in[1])); },
                    {RandomTensor({6}, rng), RandomTensor({6}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) {
            return P(Concat({Slice(in[0], 1, 1, 2), in[1]}, 1));
          },
                    {RandomTensor({2, 4, 3}, rng), RandomTensor({2, 1, 3}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(BroadcastTime(MeanTime(in[0]), 3)); },
                    {RandomTensor({2, 3, 5}, rng)}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(ScaleChannels(in[0], in[1])); },
                    {RandomTensor({2, 3, 5}, rng), RandomTensor({2, 3}, rng)}) < tol);
    BatchNorm bn(3);
    bn.gamma = RandomTensor({3}, rng, 0.5, 1.5);
    bn.beta = RandomTensor({3}, rng);
    CHECK(GradCheck([&](auto& in) { return P(bn.Forward(in[0], true)); },
                    {RandomTensor({2, 3, 4}, rng), bn.gamma, bn.beta}) < tol);
    CHECK(GradCheck([&](auto& in) { return P(bn.Forward(in[0], false)); },
                    {RandomTensor({2, 3}, rng), bn.gamma, bn.beta}) < tol);
    CHECK(GradCheck(
              [&](auto& in) {
                auto [m, s] = WeightedMoments(in[0], Softmax(in[1], 2));
                return Add(P(m), Dot(s, std::span(proj).subspan(100, s.size())));
              },
              {RandomTensor({2, 3, 6}, rng), RandomTensor({2, 3, 6}, rng)}) < tol);
    std::vector<int> labels = {0, 4, 2};
    CHECK(GradCheck([&](auto& in) { return CrossEntropy(in[0], labels); },
                    {RandomTensor({3, 5}, rng, -2, 2)}) < tol);
  }
}

TEST_CASE("param archive round trip and truncation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dksv-archive-test";
  fs::create_directories(dir);
  ParamArchive a;
  a.header = "name=test\n";
  a.entries.push_back({"blocks.0.0.kernels", {2, 3}, {1, -2, 3.5, 1e-300, -0.0, 7}});
  a.entries.push_back({"pool.bias", {1}, {std::nextafter(1.0, 2.0)}});
  const std::string file = (dir / "a.bin").string();
  WriteParamArchive(file, a);
  ParamArchive b = ReadParamArchive(file);
  CHECK(b.header == a.header);
  REQUIRE(b.entries.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(b.entries[i].path == a.entries[i].path);
    CHECK(b.entries[i].shape == a.entries[i].shape);
    CHECK(std::memcmp(b.entries[i].values.data(), a.entries[i].values.data(),
                      a.entries[i].values.size() * 8) == 0);
  }
  fs::resize_file(file, fs::file_size(file) - 12);
  try {
    ReadParamArchive(file);
    FAIL("expected truncation error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("pool.bias") != std::string::npos);
  }
  fs::remove_all(dir);
}
