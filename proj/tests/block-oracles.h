// tests/block-oracles.h

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

#ifndef DKSV_TESTS_BLOCK_ORACLES_H_
#define DKSV_TESTS_BLOCK_ORACLES_H_

// Straight-line loop implementations of the network blocks for a single
// utterance [C x T], inference-mode batch norm. They share no code with the
// library besides reading parameter values.

#include <algorithm>
#include <cmath>
#include <vector>

#include "blocks/attentive-pool.h"
#include "blocks/dconv-block.h"
#include "blocks/hier-res-block.h"
#include "blocks/se-block.h"

namespace dksv::testing {

using Vec = std::vector<double>;

inline Vec Values(const Tensor& t) { return Vec(t.data().begin(), t.data().end()); }

inline Vec ConvLoop(const Vec& x, std::size_t cin, std::size_t T, const double* w,
                    std::size_t cout, std::size_t k, const double* b, std::size_t dil) {
  const long pad = static_cast<long>(dil * (k - 1) / 2);
  Vec y(cout * T);
  for (std::size_t o = 0; o < cout; ++o)
    for (std::size_t t = 0; t < T; ++t) {
      double s = b[o];
      for (std::size_t i = 0; i < cin; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const long src = static_cast<long>(t + j * dil) - pad;
          if (src < 0 || src >= static_cast<long>(T)) continue;
          s += w[(o * cin + i) * k + j] * x[i * T + src];
        }
      y[o * T + t] = s;
    }
  return y;
}

inline Vec DenseLoop(const Vec& x, const Linear& l) {
  const std::size_t in = l.in(), out = l.out();
  Vec y(out);
  for (std::size_t o = 0; o < out; ++o) {
    double s = l.bias.data()[o];
    for (std::size_t i = 0; i < in; ++i) s += l.weight.data()[o * in + i] * x[i];
    y[o] = s;
  }
  return y;
}

inline Vec TimeMean(const Vec& x, std::size_t C, std::size_t T) {
  Vec m(C, 0.0);
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t t = 0; t < T; ++t) m[c] += x[c * T + t];
    m[c] /= T;
  }
  return m;
}

inline Vec SoftmaxLoop(Vec z) {
  const double mx = *std::max_element(z.begin(), z.end());
  double s = 0.0;
  for (double& v : z) s += (v = std::exp(v - mx));
  for (double& v : z) v /= s;
  return z;
}

inline double Relu(double v) { return v > 0 ? v : 0.0; }
inline double Sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

struct DconvLoopResult {
  Vec alpha, pre_bn, out;
};

inline DconvLoopResult DconvLoop(const Vec& x, std::size_t T, const DconvBlock& blk) {
  const std::size_t cin = blk.in_channels(), cout = blk.out_channels();
  const std::size_t K = blk.num_kernels(), k = blk.kernel_size();
  DconvLoopResult r;
  Vec hidden = DenseLoop(TimeMean(x, cin, T), blk.att_fc1);
  for (double& v : hidden) v = Relu(v);
  Vec logits = DenseLoop(hidden, blk.att_fc2);
  for (double& v : logits) v /= blk.temperature();
  r.alpha = SoftmaxLoop(logits);
  const std::size_t ks = cout * cin * k;
  Vec w(ks, 0.0), b(cout, 0.0);
  for (std::size_t m = 0; m < K; ++m) {
    for (std::size_t i = 0; i < ks; ++i) w[i] += r.alpha[m] * blk.kernels.data()[m * ks + i];
    for (std::size_t o = 0; o < cout; ++o) b[o] += r.alpha[m] * blk.biases.data()[m * cout + o];
  }
  r.pre_bn = ConvLoop(x, cin, T, w.data(), cout, k, b.data(), blk.dilation());
  r.out.resize(cout * T);
  for (std::size_t o = 0; o < cout; ++o) {
    const double scale = blk.bn.gamma.data()[o] /
                         std::sqrt(blk.bn.running_var()[o] + blk.bn.options().eps);
    for (std::size_t t = 0; t < T; ++t) {
      const double z = (r.pre_bn[o * T + t] - blk.bn.running_mean()[o]) * scale +
                       blk.bn.beta.data()[o];
      r.out[o * T + t] = Relu(z);
    }
  }
  return r;
}

inline Vec SeLoop(const Vec& x, std::size_t C, std::size_t T, const SeBlock& se) {
  Vec h = DenseLoop(TimeMean(x, C, T), se.fc1);
  for (double& v : h) v = Relu(v);
  Vec s = DenseLoop(h, se.fc2);
  Vec y(C * T);
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t t = 0; t < T; ++t) y[c * T + t] = Sigmoid(s[c]) * x[c * T + t];
  return y;
}

inline Vec HierLoop(const Vec& x, std::size_t T, const HierResBlock& blk) {
  const std::size_t C = blk.channels(), s = blk.scale(), w = C / s;
  Vec cat(C * T);
  Vec prev;
  for (std::size_t i = 0; i < s; ++i) {
    Vec g(x.begin() + i * w * T, x.begin() + (i + 1) * w * T);
    Vec y;
    if (s == 1) {
      y = DconvLoop(g, T, blk.convs[0]).out;
    } else if (i == 0) {
      y = g;
    } else {
      for (std::size_t j = 0; j < g.size(); ++j) g[j] += prev[j];
      y = DconvLoop(g, T, blk.convs[i - 1]).out;
    }
    std::copy(y.begin(), y.end(), cat.begin() + i * w * T);
    prev = y;
  }
  Vec out = SeLoop(cat, C, T, blk.se);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[j];
  return out;
}

inline Vec AttPoolLoop(const Vec& h, std::size_t C, std::size_t T, const AttentivePool& p) {
  const std::size_t A = p.w1.dim(0);
  Vec mean = TimeMean(h, C, T), sd(C);
  for (std::size_t c = 0; c < C; ++c) {
    double v = 0.0;
    for (std::size_t t = 0; t < T; ++t) v += (h[c * T + t] - mean[c]) * (h[c * T + t] - mean[c]);
    sd[c] = std::sqrt(v / T);
  }
  Vec out(2 * C);
  std::vector<Vec> logits(C, Vec(T));
  for (std::size_t t = 0; t < T; ++t) {
    Vec ctx(3 * C);
    for (std::size_t c = 0; c < C; ++c) {
      ctx[c] = h[c * T + t];
      ctx[C + c] = mean[c];
      ctx[2 * C + c] = sd[c];
    }
    Vec hid(A);
    for (std::size_t a = 0; a < A; ++a) {
      double s = p.b1.data()[a];
      for (std::size_t i = 0; i < 3 * C; ++i) s += p.w1.data()[a * 3 * C + i] * ctx[i];
      hid[a] = std::tanh(s);
    }
    for (std::size_t c = 0; c < C; ++c) {
      double s = p.b2.data()[c];
      for (std::size_t a = 0; a < A; ++a) s += p.w2.data()[c * A + a] * hid[a];
      logits[c][t] = s;
    }
  }
  for (std::size_t c = 0; c < C; ++c) {
    Vec alpha = SoftmaxLoop(logits[c]);
    double mu = 0.0, m2 = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      mu += alpha[t] * h[c * T + t];
      m2 += alpha[t] * h[c * T + t] * h[c * T + t];
    }
    out[c] = mu;
    out[C + c] = std::sqrt(std::max(0.0, m2 - mu * mu));
  }
  return out;
}

}  // namespace dksv::testing

#endif  // DKSV_TESTS_BLOCK_ORACLES_H_
