// src/frontend/augment.h

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

#ifndef DKSV_FRONTEND_AUGMENT_H_
#define DKSV_FRONTEND_AUGMENT_H_

#include <cstddef>
#include <limits>
#include <vector>

#include "base/random.h"
#include "frontend/wav.h"
#include "numerics/tensor.h"

namespace dksv {

enum class AugmentKind { kFreqMask = 1, kTimeMask = 2, kNoise = 4 };

struct AugmentSpec {
  std::size_t freq_mask_count = 1;
  std::size_t freq_mask_max_width = 10;  // mel bins
  std::size_t time_mask_count = 1;
  std::size_t time_mask_max_width = 20;  // frames
  double noise_snr_db_min = 5.0;
  double noise_snr_db_max = 20.0;
  unsigned enabled = 7;  // bitwise OR of AugmentKind values

  bool Enabled(AugmentKind k) const { return (enabled & static_cast<unsigned>(k)) != 0; }
  void Validate() const;
};

/// Rectangle [row_start, row_start + rows) x [col_start, col_start + cols).
struct MaskRect {
  std::size_t row_start = 0, rows = 0;
  std::size_t col_start = 0, cols = 0;
};

struct MaskedFeatures {
  Tensor feats;
  std::vector<MaskRect> masks;
  double fill = 0.0;
};

/// Random segment of `frames` columns from [n_mels x T]. T > frames: uniform
/// start; T < frames: the input is tiled cyclically; T == frames: copy.
Tensor CropSegment(const Tensor& feats, std::size_t frames, Rng& rng);

/// Frequency and time masks filled with the mean of the whole feature
/// matrix. Disabled mask kinds draw nothing from the generator.
MaskedFeatures SpecAugment(const Tensor& feats, const AugmentSpec& spec, Rng& rng);

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// Adds white Gaussian noise scaled to exactly `snr_db` relative to the
/// signal power. snr_db == +inf returns the input; a silent input is
/// returned unchanged with a warning.
Utterance AddNoise(const Utterance& utt, double snr_db, Rng& rng);

/// 10 log10(P_signal / P_noise) given clean and noisy waveforms.
double MeasureSnrDb(const std::vector<double>& clean, const std::vector<double>& noisy);

}  // namespace dksv

#endif  // DKSV_FRONTEND_AUGMENT_H_
