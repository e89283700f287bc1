// src/frontend/mel-features.h

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

#ifndef DKSV_FRONTEND_MEL_FEATURES_H_
#define DKSV_FRONTEND_MEL_FEATURES_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frontend/wav.h"
#include "numerics/tensor.h"

namespace dksv {

struct FeatureConfig {
  int sample_rate = 16000;
  double win_ms = 25.0;
  double hop_ms = 10.0;
  std::size_t fft_size = 512;
  std::size_t n_mels = 80;
  double fmin = 20.0;
  double fmax = 7600.0;
  std::size_t segment_frames = 300;
  bool normalize = true;  // per-utterance mean/variance over time per mel bin
  double log_floor = 1e-10;

  std::size_t WindowSamples() const;
  std::size_t HopSamples() const;
  /// Throws ConfigError when the invariants do not hold.
  void Validate() const;

  /// Sets one field from text; throws ConfigError for unknown keys.
  void Set(const std::string& key, const std::string& value);
  /// key=value lines, every field, each key prefixed with `prefix`.
  std::string Serialize(const std::string& prefix = "") const;
};

/// HTK mel scale: 2595 * log10(1 + f / 700).
double HzToMel(double hz);
double MelToHz(double mel);

/// Triangular filters with edges equally spaced on the mel scale between
/// fmin and fmax, evaluated on the FFT bin frequencies.
class MelFilterbank {
 public:
  explicit MelFilterbank(const FeatureConfig& cfg);

  std::size_t num_filters() const { return weights_.size(); }
  std::size_t num_bins() const { return num_bins_; }
  std::span<const double> weights(std::size_t filter) const { return weights_[filter]; }
  double center_hz(std::size_t filter) const { return centers_hz_[filter]; }

  /// Filter energies of one power spectrum (length num_bins()).
  void Apply(std::span<const double> power, std::span<double> out) const;

 private:
  std::size_t num_bins_ = 0;
  std::vector<std::vector<double>> weights_;
  std::vector<double> centers_hz_;
};

/// 1 + floor((N - win) / hop); zero when N < win.
std::size_t NumFrames(std::size_t num_samples, const FeatureConfig& cfg);

/// Hann-windowed power spectra through the mel filterbank, natural log with
/// floor. Returns [n_mels x frames]. Throws InputError if the waveform is
/// shorter than one window.
Tensor LogMel(const Utterance& utt, const FeatureConfig& cfg);
Tensor LogMel(std::span<const double> samples, const FeatureConfig& cfg);

/// Per-row (mel bin) mean and variance normalization over time,
/// (x - mean) / (std + 1e-8). Input [n_mels x T] with T >= 2.
Tensor CmvnFreq(const Tensor& feats);

/// LogMel followed by CmvnFreq when cfg.normalize is set.
Tensor ExtractFeatures(const Utterance& utt, const FeatureConfig& cfg);

}  // namespace dksv

#endif  // DKSV_FRONTEND_MEL_FEATURES_H_
