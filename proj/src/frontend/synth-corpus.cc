// src/frontend/synth-corpus.cc

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

#include "frontend/synth-corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "base/error.h"
#include "base/random.h"
#include "frontend/augment.h"

namespace dksv {

namespace {

constexpr double kMinF0 = 90.0, kMaxF0 = 260.0;
constexpr double kMaxPartialHz = 4000.0;
constexpr int kMaxHarmonic = 16;

}  // namespace

std::string SpeakerName(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "spk%03zu", index);
  return buf;
}

std::string UtteranceName(std::size_t speaker, std::size_t utt) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "-utt%02zu", utt);
  return SpeakerName(speaker) + buf;
}

SpeakerProfile SynthSpeaker(std::uint64_t seed, std::size_t index) {
  SpeakerProfile spk;
  spk.id = SpeakerName(index);
  Rng rng(DeriveSeed(seed, "speaker:" + spk.id));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  spk.f0 = kMinF0 * std::pow(kMaxF0 / kMinF0, unit(rng));
  const int max_h = std::min(kMaxHarmonic, static_cast<int>(kMaxPartialHz / spk.f0));
  std::vector<int> pool(max_h);
  std::iota(pool.begin(), pool.end(), 1);
  std::shuffle(pool.begin(), pool.end(), rng);
  const int n = std::uniform_int_distribution<int>(4, 8)(rng);
  spk.harmonics.assign(pool.begin(), pool.begin() + n);
  std::sort(spk.harmonics.begin(), spk.harmonics.end());
  for (int i = 0; i < n; ++i) spk.amplitudes.push_back(0.2 + 0.8 * unit(rng));
  return spk;
}

Utterance SynthUtterance(const SpeakerProfile& spk, std::uint64_t seed,
                         const std::string& utterance_id, double seconds, int sample_rate) {
  if (!(seconds > 0.0)) throw InputError("synth: duration must be positive");
  Rng rng(DeriveSeed(seed, "utt:" + utterance_id));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  const double f0 = spk.f0 * (1.0 + 0.04 * (unit(rng) - 0.5));
  std::vector<double> phases(spk.harmonics.size());
  for (double& p : phases) p = two_pi * unit(rng);
  const double syllable_hz = 3.0 + 2.0 * unit(rng);
  const double syllable_phase = two_pi * unit(rng);

  const std::size_t n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    const double s = std::sin(two_pi * syllable_hz * t + syllable_phase);
    const double env = 0.2 + 0.8 * s * s;
    double v = 0.0;
    for (std::size_t p = 0; p < phases.size(); ++p) {
      v += spk.amplitudes[p] * std::sin(two_pi * spk.harmonics[p] * f0 * t + phases[p]);
    }
    x[i] = env * v;
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  for (double& v : x) v *= 0.5 / peak;

  Utterance utt;
  utt.speaker_id = spk.id;
  utt.utterance_id = utterance_id;
  utt.sample_rate = sample_rate;
  utt.samples = std::move(x);
  return AddNoise(utt, 15.0 + 10.0 * unit(rng), rng);
}

std::size_t HeldOutPerSpeaker(std::size_t m) {
  if (m < 4) return m / 2;
  const auto r = static_cast<std::size_t>(std::lround(0.4 * static_cast<double>(m)));
  return std::clamp<std::size_t>(r, 2, m - 2);
}

std::vector<Trial> MakeTrials(const std::vector<std::pair<std::string, std::string>>& utts,
                              std::uint64_t seed) {
  std::vector<Trial> targets, nontargets;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    for (std::size_t j = i + 1; j < utts.size(); ++j) {
      Trial t{utts[i].first == utts[j].first, utts[i].second, utts[j].second};
      (t.target ? targets : nontargets).push_back(std::move(t));
    }
  }
  Rng rng(seed);
  std::shuffle(nontargets.begin(), nontargets.end(), rng);
  nontargets.resize(std::min(nontargets.size(), targets.size()));
  std::vector<Trial> all = std::move(targets);
  all.insert(all.end(), nontargets.begin(), nontargets.end());
  std::shuffle(all.begin(), all.end(), rng);
  return all;
}

SynthCorpus SynthesizeCorpus(const SynthCorpusOptions& opts) {
  if (opts.n_speakers < 2) throw InputError("synth: need at least 2 speakers");
  if (opts.utts_per_speaker < 1) throw InputError("synth: need at least 1 utterance per speaker");
  SynthCorpus corpus;
  const std::size_t held_out = HeldOutPerSpeaker(opts.utts_per_speaker);
  std::vector<std::pair<std::string, std::string>> train, test;
  for (std::size_t s = 0; s < opts.n_speakers; ++s) {
    corpus.speakers.push_back(SynthSpeaker(opts.seed, s));
    for (std::size_t u = 0; u < opts.utts_per_speaker; ++u) {
      const std::string id = UtteranceName(s, u);
      corpus.utterances.push_back(
          SynthUtterance(corpus.speakers.back(), opts.seed, id, opts.seconds, opts.sample_rate));
      const bool is_test = u >= opts.utts_per_speaker - held_out;
      corpus.is_test.push_back(is_test);
      (is_test ? test : train).emplace_back(corpus.speakers.back().id, id);
    }
  }
  corpus.train_trials = MakeTrials(train, DeriveSeed(opts.seed, "trials:train"));
  corpus.test_trials = MakeTrials(test, DeriveSeed(opts.seed, "trials:test"));
  return corpus;
}

}  // namespace dksv
