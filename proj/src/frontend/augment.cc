// src/frontend/augment.cc

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

#include "frontend/augment.h"

#include <cmath>

#include <spdlog/spdlog.h>

#include "base/error.h"

namespace dksv {

namespace {

double MeanSquare(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

std::size_t UniformIndex(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

void AugmentSpec::Validate() const {
  if (!(noise_snr_db_min <= noise_snr_db_max)) {
    throw ConfigError("augment: noise SNR range is empty");
  }
  if (enabled > 7) throw ConfigError("augment: unknown augmentation kind");
}

Tensor CropSegment(const Tensor& feats, std::size_t frames, Rng& rng) {
  if (feats.rank() != 2) throw DimensionError("crop: expected [n_mels x T]");
  if (frames == 0) throw InputError("crop: segment length must be positive");
  const std::size_t rows = feats.dim(0), T = feats.dim(1);
  const std::size_t start = T > frames ? UniformIndex(rng, 0, T - frames) : 0;
  auto x = feats.data();
  std::vector<double> out(rows * frames);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t t = 0; t < frames; ++t) {
      out[r * frames + t] = x[r * T + (start + t) % T];
    }
  }
  return Tensor::FromData({rows, frames}, std::move(out));
}

MaskedFeatures SpecAugment(const Tensor& feats, const AugmentSpec& spec, Rng& rng) {
  if (feats.rank() != 2) throw DimensionError("spec_augment: expected [n_mels x T]");
  const std::size_t rows = feats.dim(0), T = feats.dim(1);
  MaskedFeatures res;
  std::vector<double> y(feats.data().begin(), feats.data().end());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  res.fill = mean;

  if (spec.Enabled(AugmentKind::kFreqMask) && spec.freq_mask_count > 0) {
    if (spec.freq_mask_max_width >= rows) {
      throw InputError("spec_augment: frequency mask width " +
                       std::to_string(spec.freq_mask_max_width) + " >= " +
                       std::to_string(rows) + " bins");
    }
    for (std::size_t i = 0; i < spec.freq_mask_count; ++i) {
      const std::size_t w = UniformIndex(rng, 0, spec.freq_mask_max_width);
      const std::size_t s = UniformIndex(rng, 0, rows - w);
      res.masks.push_back({s, w, 0, T});
    }
  }
  if (spec.Enabled(AugmentKind::kTimeMask) && spec.time_mask_count > 0) {
    if (spec.time_mask_max_width >= T) {
      throw InputError("spec_augment: time mask width " +
                       std::to_string(spec.time_mask_max_width) + " >= " +
                       std::to_string(T) + " frames");
    }
    for (std::size_t i = 0; i < spec.time_mask_count; ++i) {
      const std::size_t w = UniformIndex(rng, 0, spec.time_mask_max_width);
      const std::size_t s = UniformIndex(rng, 0, T - w);
      res.masks.push_back({0, rows, s, w});
    }
  }
  for (const MaskRect& m : res.masks) {
    for (std::size_t r = m.row_start; r < m.row_start + m.rows; ++r) {
      for (std::size_t t = m.col_start; t < m.col_start + m.cols; ++t) y[r * T + t] = mean;
    }
  }
  res.feats = Tensor::FromData(feats.shape(), std::move(y));
  return res;
}

Utterance AddNoise(const Utterance& utt, double snr_db, Rng& rng) {
  if (std::isinf(snr_db) && snr_db > 0) return utt;
  if (!std::isfinite(snr_db)) throw InputError("add_noise: SNR must be finite or +inf");
  const double p_signal = MeanSquare(utt.samples);
  if (p_signal == 0.0) {
    spdlog::warn("add_noise: utterance '{}' is silent; left unchanged", utt.utterance_id);
    return utt;
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> noise(utt.samples.size());
  for (double& v : noise) v = gauss(rng);
  const double p_raw = MeanSquare(noise);
  const double gain = std::sqrt(p_signal / (p_raw * std::pow(10.0, snr_db / 10.0)));
  Utterance out = utt;
  for (std::size_t i = 0; i < noise.size(); ++i) out.samples[i] += gain * noise[i];
  return out;
}

double MeasureSnrDb(const std::vector<double>& clean, const std::vector<double>& noisy) {
  if (clean.size() != noisy.size()) throw DimensionError("snr: length mismatch");
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    ps += clean[i] * clean[i];
    pn += (noisy[i] - clean[i]) * (noisy[i] - clean[i]);
  }
  return 10.0 * std::log10(ps / pn);
}

}  // namespace dksv
