// src/frontend/wav.h

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

#ifndef DKSV_FRONTEND_WAV_H_
#define DKSV_FRONTEND_WAV_H_

#include <string>
#include <vector>

namespace dksv {

inline constexpr int kTargetSampleRate = 16000;

struct Utterance {
  std::string speaker_id;
  std::string utterance_id;
  int sample_rate = kTargetSampleRate;
  std::vector<double> samples;  // mono, nominally in [-1, 1]
};

/// Reads a RIFF/WAVE file (PCM16 or IEEE float32, mono or stereo). Stereo is
/// averaged to mono and other rates are linearly resampled to 16 kHz.
/// Throws ParseError with the byte offset of the first problem found.
Utterance ReadWav(const std::string& path);

/// Parses an in-memory WAV image; `name` is used in error messages.
Utterance ParseWav(const std::vector<char>& bytes, const std::string& name);

/// Writes mono 16-bit PCM; samples are clipped to [-1, 1).
void WriteWav(const std::string& path, const std::vector<double>& samples,
              int sample_rate = kTargetSampleRate);

/// Linear-interpolation resampler.
std::vector<double> ResampleLinear(const std::vector<double>& in, int from_rate,
                                   int to_rate);

}  // namespace dksv

#endif  // DKSV_FRONTEND_WAV_H_
