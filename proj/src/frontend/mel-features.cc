// src/frontend/mel-features.cc

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

#include "frontend/mel-features.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "base/error.h"
#include "base/key-value.h"

namespace dksv {

namespace {

// FFTW's planner is not re-entrant; plan creation and destruction are
// serialized, execution is not.
std::mutex& FftwPlannerMutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    std::lock_guard<std::mutex> lock(FftwPlannerMutex());
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard<std::mutex> lock(FftwPlannerMutex());
    fftw_destroy_plan(plan_);
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }

  /// |X_k|^2 for k = 0..n/2.
  void PowerSpectrum(std::span<double> power) {
    fftw_execute(plan_);
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      power[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
    }
  }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

std::size_t FeatureConfig::WindowSamples() const {
  return static_cast<std::size_t>(std::lround(sample_rate * win_ms / 1000.0));
}

std::size_t FeatureConfig::HopSamples() const {
  return static_cast<std::size_t>(std::lround(sample_rate * hop_ms / 1000.0));
}

void FeatureConfig::Validate() const {
  if (sample_rate <= 0) throw ConfigError("feature: sample_rate must be positive");
  if (WindowSamples() == 0 || HopSamples() == 0) {
    throw ConfigError("feature: window and hop must be at least one sample");
  }
  if (fft_size < WindowSamples()) {
    throw ConfigError("feature: fft_size " + std::to_string(fft_size) +
                      " is smaller than the window (" +
                      std::to_string(WindowSamples()) + " samples)");
  }
  if (fft_size & (fft_size - 1)) throw ConfigError("feature: fft_size must be a power of two");
  if (n_mels < 2) throw ConfigError("feature: n_mels must be at least 2");
  if (!(fmin >= 0.0 && fmin < fmax)) throw ConfigError("feature: need 0 <= fmin < fmax");
  if (fmax > sample_rate / 2.0) throw ConfigError("feature: fmax exceeds Nyquist");
  if (segment_frames == 0) throw ConfigError("feature: segment_frames must be positive");
  if (!(log_floor > 0.0)) throw ConfigError("feature: log_floor must be positive");
}

void FeatureConfig::Set(const std::string& key, const std::string& value) {
  const std::string what = "feature." + key;
  if (key == "sample_rate") {
    sample_rate = static_cast<int>(ParseSize(value, what));
  } else if (key == "win_ms") {
    win_ms = ParseDouble(value, what);
  } else if (key == "hop_ms") {
    hop_ms = ParseDouble(value, what);
  } else if (key == "fft_size") {
    fft_size = ParseSize(value, what);
  } else if (key == "n_mels") {
    n_mels = ParseSize(value, what);
  } else if (key == "fmin") {
    fmin = ParseDouble(value, what);
  } else if (key == "fmax") {
    fmax = ParseDouble(value, what);
  } else if (key == "segment_frames") {
    segment_frames = ParseSize(value, what);
  } else if (key == "normalize") {
    normalize = ParseBool(value, what);
  } else if (key == "log_floor") {
    log_floor = ParseDouble(value, what);
  } else {
    throw ConfigError("unknown feature setting '" + key + "'");
  }
}

std::string FeatureConfig::Serialize(const std::string& prefix) const {
  std::string out;
  auto line = [&](const char* key, const std::string& v) { out += prefix + key + "=" + v + "\n"; };
  line("sample_rate", std::to_string(sample_rate));
  line("win_ms", FormatDouble(win_ms));
  line("hop_ms", FormatDouble(hop_ms));
  line("fft_size", std::to_string(fft_size));
  line("n_mels", std::to_string(n_mels));
  line("fmin", FormatDouble(fmin));
  line("fmax", FormatDouble(fmax));
  line("segment_frames", std::to_string(segment_frames));
  line("normalize", normalize ? "true" : "false");
  line("log_floor", FormatDouble(log_floor));
  return out;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(const FeatureConfig& cfg) {
  cfg.Validate();
  num_bins_ = cfg.fft_size / 2 + 1;
  const double mel_lo = HzToMel(cfg.fmin), mel_hi = HzToMel(cfg.fmax);
  const double step = (mel_hi - mel_lo) / static_cast<double>(cfg.n_mels + 1);
  weights_.assign(cfg.n_mels, std::vector<double>(num_bins_, 0.0));
  centers_hz_.resize(cfg.n_mels);
  for (std::size_t j = 0; j < cfg.n_mels; ++j) {
    const double left = mel_lo + j * step, center = left + step, right = center + step;
    centers_hz_[j] = MelToHz(center);
    for (std::size_t k = 0; k < num_bins_; ++k) {
      const double mel =
          HzToMel(static_cast<double>(k) * cfg.sample_rate / static_cast<double>(cfg.fft_size));
      const double w = std::min((mel - left) / (center - left), (right - mel) / (right - center));
      weights_[j][k] = std::max(0.0, w);
    }
  }
}

void MelFilterbank::Apply(std::span<const double> power, std::span<double> out) const {
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    double e = 0.0;
    const auto& w = weights_[j];
    for (std::size_t k = 0; k < num_bins_; ++k) e += w[k] * power[k];
    out[j] = e;
  }
}

std::size_t NumFrames(std::size_t num_samples, const FeatureConfig& cfg) {
  const std::size_t win = cfg.WindowSamples();
  if (num_samples < win) return 0;
  return 1 + (num_samples - win) / cfg.HopSamples();
}

Tensor LogMel(const Utterance& utt, const FeatureConfig& cfg) {
  if (utt.sample_rate != cfg.sample_rate) {
    throw InputError("log_mel: utterance '" + utt.utterance_id + "' has rate " +
                     std::to_string(utt.sample_rate) + ", config expects " +
                     std::to_string(cfg.sample_rate));
  }
  return LogMel(utt.samples, cfg);
}

Tensor LogMel(std::span<const double> samples, const FeatureConfig& cfg) {
  cfg.Validate();
  const std::size_t win = cfg.WindowSamples(), hop = cfg.HopSamples();
  const std::size_t frames = NumFrames(samples.size(), cfg);
  if (frames == 0) {
    throw InputError("log_mel: waveform of " + std::to_string(samples.size()) +
                     " samples is shorter than one window (" + std::to_string(win) + ")");
  }
  // TODO: cache filterbanks per config once feature extraction shows up in
  // profiles; construction is ~n_mels * fft_size log10 calls.
  const MelFilterbank bank(cfg);
  std::vector<double> window(win);
  for (std::size_t i = 0; i < win; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (win - 1));
  }

  RealFft fft(cfg.fft_size);
  std::vector<double> power(bank.num_bins()), energies(cfg.n_mels);
  std::vector<double> out(cfg.n_mels * frames);
  double* in = fft.input();
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * hop;
    for (std::size_t i = 0; i < win; ++i) in[i] = samples[start + i] * window[i];
    std::fill(in + win, in + cfg.fft_size, 0.0);
    fft.PowerSpectrum(power);
    bank.Apply(power, energies);
    for (std::size_t m = 0; m < cfg.n_mels; ++m) {
      out[m * frames + f] = std::log(std::max(energies[m], cfg.log_floor));
    }
  }
  return Tensor::FromData({cfg.n_mels, frames}, std::move(out));
}

Tensor CmvnFreq(const Tensor& feats) {
  if (feats.rank() != 2) throw DimensionError("cmvn: expected [n_mels x T]");
  const std::size_t rows = feats.dim(0), T = feats.dim(1);
  if (T < 2) throw InputError("cmvn: need at least 2 frames, got " + std::to_string(T));
  auto x = feats.data();
  std::vector<double> y(x.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = x.data() + r * T;
    double mean = 0.0;
    for (std::size_t t = 0; t < T; ++t) mean += xr[t];
    mean /= T;
    double var = 0.0;
    for (std::size_t t = 0; t < T; ++t) var += (xr[t] - mean) * (xr[t] - mean);
    var /= T;
    const double denom = std::sqrt(var) + 1e-8;
    for (std::size_t t = 0; t < T; ++t) y[r * T + t] = (xr[t] - mean) / denom;
  }
  return Tensor::FromData(feats.shape(), std::move(y));
}

Tensor ExtractFeatures(const Utterance& utt, const FeatureConfig& cfg) {
  Tensor f = LogMel(utt, cfg);
  return cfg.normalize ? CmvnFreq(f) : f;
}

}  // namespace dksv
