// src/frontend/synth-corpus.h

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

#ifndef DKSV_FRONTEND_SYNTH_CORPUS_H_
#define DKSV_FRONTEND_SYNTH_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "frontend/trials.h"
#include "frontend/wav.h"

namespace dksv {

/// A synthetic voice: fixed fundamental and a fixed subset of its harmonics
/// with fixed relative amplitudes.
struct SpeakerProfile {
  std::string id;
  double f0 = 0.0;
  std::vector<int> harmonics;
  std::vector<double> amplitudes;
};

struct SynthCorpusOptions {
  std::size_t n_speakers = 20;
  std::size_t utts_per_speaker = 10;
  double seconds = 3.0;
  std::uint64_t seed = 1;
  int sample_rate = kTargetSampleRate;
};

struct SynthCorpus {
  std::vector<SpeakerProfile> speakers;
  std::vector<Utterance> utterances;  // speaker-major order
  std::vector<bool> is_test;          // parallel to utterances
  std::vector<Trial> train_trials;
  std::vector<Trial> test_trials;
};

std::string SpeakerName(std::size_t index);
std::string UtteranceName(std::size_t speaker, std::size_t utt);

SpeakerProfile SynthSpeaker(std::uint64_t seed, std::size_t index);

/// One utterance: per-utterance F0 jitter, random partial phases, a
/// syllable-rate amplitude envelope and 15-25 dB white noise.
Utterance SynthUtterance(const SpeakerProfile& spk, std::uint64_t seed,
                         const std::string& utterance_id, double seconds,
                         int sample_rate = kTargetSampleRate);

/// Number of held-out utterances per speaker out of `m`.
std::size_t HeldOutPerSpeaker(std::size_t m);

/// Builds the corpus and both trial lists. Within each speaker the last
/// HeldOutPerSpeaker(m) utterances are held out. Each trial list holds every
/// same-speaker pair of its partition plus as many distinct cross-speaker
/// pairs, drawn at random.
SynthCorpus SynthesizeCorpus(const SynthCorpusOptions& opts);

/// Balanced trial list over the given (speaker, utterance id) pairs.
std::vector<Trial> MakeTrials(const std::vector<std::pair<std::string, std::string>>& utts,
                              std::uint64_t seed);

}  // namespace dksv

#endif  // DKSV_FRONTEND_SYNTH_CORPUS_H_
