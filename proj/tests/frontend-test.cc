// tests/frontend-test.cc

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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <map>
#include <set>

#include "base/error.h"
#include "base/random.h"
#include "frontend/augment.h"
#include "frontend/mel-features.h"
#include "frontend/synth-corpus.h"
#include "frontend/trials.h"
#include "frontend/wav.h"

using namespace dksv;

namespace {

std::vector<double> Tone(double hz, double seconds, double amp = 0.5, int rate = 16000) {
  std::vector<double> x(static_cast<std::size_t>(seconds * rate));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = amp * std::sin(2.0 * std::numbers::pi * hz * i / rate);
  }
  return x;
}

// Minimal RIFF writer kept independent of the library's WriteWav.
std::vector<char> WavImage(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                           std::uint16_t bits, const std::vector<char>& payload) {
  std::vector<char> b;
  auto put = [&](std::uint32_t v, int n) {
    for (int i = 0; i < n; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  tag("RIFF");
  put(36 + static_cast<std::uint32_t>(payload.size()), 4);
  tag("WAVE");
  tag("fmt ");
  put(16, 4);
  put(format, 2);
  put(channels, 2);
  put(rate, 4);
  put(rate * channels * bits / 8, 4);
  put(channels * bits / 8, 2);
  put(bits, 2);
  tag("data");
  put(static_cast<std::uint32_t>(payload.size()), 4);
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

std::vector<char> Pcm16(const std::vector<std::int16_t>& v) {
  std::vector<char> out;
  for (std::int16_t s : v) {
    auto u = static_cast<std::uint16_t>(s);
    out.push_back(static_cast<char>(u & 0xff));
    out.push_back(static_cast<char>(u >> 8));
  }
  return out;
}

double RowMean(std::span<const double> x, std::size_t r, std::size_t T) {
  double s = 0.0;
  for (std::size_t t = 0; t < T; ++t) s += x[r * T + t];
  return s / T;
}

}  // namespace

TEST_CASE("wav: zeros, scale, stereo averaging") {
  auto zeros = ParseWav(WavImage(1, 1, 16000, 16, Pcm16(std::vector<std::int16_t>(16000, 0))), "z");
  CHECK(zeros.samples.size() == 16000);
  for (double v : zeros.samples) CHECK(v == 0.0);

  auto max = ParseWav(WavImage(1, 1, 16000, 16, Pcm16({32767, -32768})), "m");
  CHECK(max.samples[0] == 32767.0 / 32768.0);
  CHECK(max.samples[1] == -1.0);

  auto stereo = ParseWav(WavImage(1, 2, 16000, 16, Pcm16({1000, -1000, -7, 7, 123, -123})), "s");
  REQUIRE(stereo.samples.size() == 3);
  for (double v : stereo.samples) CHECK(v == 0.0);
}

TEST_CASE("wav: float32 and resampling") {
  std::vector<char> payload(8);
  float a = 0.25f, b = -0.5f;
  std::memcpy(payload.data(), &a, 4);
  std::memcpy(payload.data() + 4, &b, 4);
  auto f = ParseWav(WavImage(3, 1, 16000, 32, payload), "f");
  CHECK(f.samples == std::vector<double>{0.25, -0.5});

  std::vector<std::int16_t> ramp(8000);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<std::int16_t>(i);
  auto up = ParseWav(WavImage(1, 1, 8000, 16, Pcm16(ramp)), "r");
  CHECK(up.sample_rate == 16000);
  CHECK(up.samples.size() == 15999);
  // Linear interpolation of a ramp is the ramp at half steps.
  CHECK(up.samples[3] == doctest::Approx(1.5 / 32768.0));
}

TEST_CASE("wav: malformed input reports byte offsets") {
  auto bad = WavImage(1, 1, 16000, 16, Pcm16({1, 2}));
  std::memcpy(bad.data() + 8, "WAVX", 4);
  CHECK_THROWS_WITH_AS(ParseWav(bad, "x"), doctest::Contains("byte offset 8"), ParseError);

  auto pcm24 = WavImage(1, 1, 16000, 24, std::vector<char>(6));
  CHECK_THROWS_WITH_AS(ParseWav(pcm24, "x"), doctest::Contains("unsupported codec"), ParseError);

  auto truncated = WavImage(1, 1, 16000, 16, Pcm16({1, 2, 3}));
  truncated.resize(truncated.size() - 4);
  CHECK_THROWS_AS(ParseWav(truncated, "x"), ParseError);
  CHECK_THROWS_AS(ParseWav(std::vector<char>(5), "x"), ParseError);
}

TEST_CASE("wav: write/read round trip") {
  const auto path = std::filesystem::temp_directory_path() / "dksv-frontend-rt.wav";
  std::vector<double> x = {0.0, 0.5, -0.5, 1.0 - 1.0 / 32768.0, -1.0};
  WriteWav(path.string(), x);
  auto back = ReadWav(path.string());
  CHECK(back.samples == x);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ReadWav(path.string()), IoError);
}

TEST_CASE("mel scale closed form") {
  CHECK(std::abs(HzToMel(1000.0) - 999.99) < 0.01);
  CHECK(std::abs(HzToMel(1000.0) - 2595.0 * std::log10(1.0 + 1000.0 / 700.0)) < 1e-12);
  for (double f : {0.0, 20.0, 440.0, 7600.0}) CHECK(MelToHz(HzToMel(f)) == doctest::Approx(f));
}

TEST_CASE("filterbank: nonnegative, unimodal, covers the band") {
  FeatureConfig cfg;
  MelFilterbank bank(cfg);
  REQUIRE(bank.num_filters() == 80);
  REQUIRE(bank.num_bins() == 257);
  const double step = (HzToMel(7600.0) - HzToMel(20.0)) / 81.0;
  for (std::size_t j = 0; j < bank.num_filters(); ++j) {
    auto w = bank.weights(j);
    CHECK(bank.center_hz(j) == doctest::Approx(MelToHz(HzToMel(20.0) + (j + 1) * step)));
    // Weights rise then fall: at most one sign change of the difference.
    int changes = 0;
    double prev_diff = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      CHECK(w[k] >= 0.0);
      CHECK(w[k] <= 1.0);
      if (k > 0) {
        double d = w[k] - w[k - 1];
        if (d < 0 && prev_diff > 0) ++changes;
        if (d > 0 && prev_diff < 0) ++changes;
        if (d != 0) prev_diff = d;
      }
    }
    CHECK(changes <= 1);
  }
  for (std::size_t k = 0; k < bank.num_bins(); ++k) {
    const double hz = k * 16000.0 / 512.0;
    if (hz <= 20.0 || hz >= 7600.0) continue;
    double total = 0.0;
    for (std::size_t j = 0; j < bank.num_filters(); ++j) total += bank.weights(j)[k];
    CHECK(total > 0.0);
  }
}

TEST_CASE("log_mel: 1 kHz tone peaks at the nearest-center filter") {
  FeatureConfig cfg;
  MelFilterbank bank(cfg);
  std::size_t nearest = 0;
  for (std::size_t j = 1; j < bank.num_filters(); ++j) {
    if (std::abs(bank.center_hz(j) - 1000.0) < std::abs(bank.center_hz(nearest) - 1000.0)) {
      nearest = j;
    }
  }
  Tensor f = LogMel(Tone(1000.0, 1.0), cfg);
  const std::size_t T = f.dim(1);
  auto x = f.data();
  for (std::size_t t = 0; t < T; ++t) {
    std::size_t best = 0;
    for (std::size_t m = 1; m < 80; ++m) {
      if (x[m * T + t] > x[best * T + t]) best = m;
    }
    CHECK(best == nearest);
  }
}

TEST_CASE("log_mel: silence and shape") {
  FeatureConfig cfg;
  Tensor f = LogMel(std::vector<double>(4000, 0.0), cfg);
  CHECK(f.dim(0) == 80);
  for (double v : f.data()) CHECK(v == std::log(1e-10));

  Rng rng(3);
  std::uniform_int_distribution<std::size_t> len(400, 40000);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = len(rng);
    std::vector<double> x(n);
    for (auto& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    Tensor g = LogMel(x, cfg);
    CHECK(g.dim(0) == 80);
    CHECK(g.dim(1) == 1 + (n - 400) / 160);
  }
  CHECK_THROWS_AS(LogMel(std::vector<double>(399, 0.1), cfg), InputError);

  Utterance utt;
  utt.sample_rate = 8000;
  utt.samples.assign(1000, 0.1);
  CHECK_THROWS_AS(LogMel(utt, cfg), InputError);
}

TEST_CASE("feature config validation") {
  FeatureConfig cfg;
  cfg.fft_size = 256;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.fmax = 9000;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.n_mels = 1;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
}

TEST_CASE("cmvn: moments, constant rows, affine invariance, idempotence") {
  Rng rng(11);
  std::normal_distribution<double> g(3.0, 2.0);
  const std::size_t R = 6, T = 50;
  std::vector<double> x(R * T);
  for (auto& v : x) v = g(rng);
  for (std::size_t t = 0; t < T; ++t) x[5 * T + t] = 4.25;
  Tensor in = Tensor::FromData({R, T}, x);
  Tensor y = CmvnFreq(in);
  auto yd = y.data();
  for (std::size_t r = 0; r < 5; ++r) {
    const double m = RowMean(yd, r, T);
    double var = 0.0;
    for (std::size_t t = 0; t < T; ++t) var += (yd[r * T + t] - m) * (yd[r * T + t] - m);
    CHECK(std::abs(m) < 1e-6);
    CHECK(std::abs(var / T - 1.0) < 1e-4);
  }
  for (std::size_t t = 0; t < T; ++t) CHECK(yd[5 * T + t] == 0.0);

  std::vector<double> z(x);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t t = 0; t < T; ++t) z[r * T + t] = (1.5 + r) * z[r * T + t] - 7.0 * r;
  Tensor yz = CmvnFreq(Tensor::FromData({R, T}, z));
  Tensor yy = CmvnFreq(y);
  for (std::size_t i = 0; i < R * T; ++i) {
    CHECK(std::abs(yz.data()[i] - yd[i]) < 1e-6);
    CHECK(std::abs(yy.data()[i] - yd[i]) < 1e-6);
  }
  CHECK_THROWS_AS(CmvnFreq(Tensor::Zeros({3, 1})), InputError);
}

TEST_CASE("crop: identity, tiling, reproducible offsets") {
  Rng rng(1);
  std::vector<double> v(80 * 300);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  Tensor x = Tensor::FromData({80, 300}, v);
  Tensor c = CropSegment(x, 300, rng);
  CHECK(std::equal(c.data().begin(), c.data().end(), x.data().begin()));

  Tensor half = Tensor::FromData({2, 150}, std::vector<double>(v.begin(), v.begin() + 300));
  Tensor tiled = CropSegment(half, 300, rng);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t t = 0; t < 300; ++t)
      CHECK(tiled.at({r, t}) == half.at({r, t % 150}));

  std::vector<double> longv(3 * 1000);
  for (std::size_t i = 0; i < longv.size(); ++i) longv[i] = static_cast<double>(i % 1000);
  Tensor lx = Tensor::FromData({3, 1000}, longv);
  Rng a(77), b(77);
  Tensor ca = CropSegment(lx, 300, a), cb = CropSegment(lx, 300, b);
  CHECK(std::equal(ca.data().begin(), ca.data().end(), cb.data().begin()));
  const double start = ca.at({0, 0});
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t t = 0; t < 300; ++t) CHECK(ca.at({r, t}) == start + t);
}

TEST_CASE("spec_augment: identity, replayed masks, untouched cells") {
  Rng data_rng(5);
  std::vector<double> v(40 * 120);
  for (auto& e : v) e = std::normal_distribution<double>(0, 1)(data_rng);
  Tensor x = Tensor::FromData({40, 120}, v);
  double mean = 0.0;
  for (double e : v) mean += e;
  mean /= v.size();

  AugmentSpec none;
  none.freq_mask_count = 0;
  none.time_mask_count = 0;
  Rng r0(1);
  auto id = SpecAugment(x, none, r0);
  CHECK(id.masks.empty());
  CHECK(std::memcmp(id.feats.data().data(), v.data(), v.size() * sizeof(double)) == 0);

  AugmentSpec one;
  one.freq_mask_count = 1;
  one.freq_mask_max_width = 7;
  one.time_mask_count = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed), replay(seed);
    auto out = SpecAugment(x, one, rng);
    const auto w = std::uniform_int_distribution<std::size_t>(0, 7)(replay);
    const auto s = std::uniform_int_distribution<std::size_t>(0, 40 - w)(replay);
    REQUIRE(out.masks.size() == 1);
    CHECK(out.masks[0].row_start == s);
    CHECK(out.masks[0].rows == w);
    for (std::size_t r = 0; r < 40; ++r)
      for (std::size_t t = 0; t < 120; ++t) {
        const double got = out.feats.at({r, t});
        if (r >= s && r < s + w) {
          CHECK(got == mean);
        } else {
          CHECK(std::memcmp(&got, &v[r * 120 + t], sizeof(double)) == 0);
        }
      }
  }

  AugmentSpec both;
  both.freq_mask_count = 2;
  both.time_mask_count = 3;
  Rng rng(9);
  auto out = SpecAugment(x, both, rng);
  CHECK(out.masks.size() == 5);
  for (std::size_t r = 0; r < 40; ++r)
    for (std::size_t t = 0; t < 120; ++t) {
      bool inside = false;
      for (auto& m : out.masks)
        inside |= r >= m.row_start && r < m.row_start + m.rows && t >= m.col_start &&
                  t < m.col_start + m.cols;
      if (!inside) CHECK(out.feats.at({r, t}) == v[r * 120 + t]);
    }

  AugmentSpec wide;
  wide.freq_mask_max_width = 40;
  CHECK_THROWS_AS(SpecAugment(x, wide, rng), InputError);
}

TEST_CASE("add_noise: exact SNR, seeds, sentinels") {
  Utterance utt;
  utt.utterance_id = "tone";
  utt.samples = Tone(440.0, 1.0);
  Rng a(1), b(2);
  auto na = AddNoise(utt, 10.0, a);
  auto nb = AddNoise(utt, 10.0, b);
  CHECK(std::abs(MeasureSnrDb(utt.samples, na.samples) - 10.0) < 0.1);
  CHECK(std::abs(MeasureSnrDb(utt.samples, nb.samples) - 10.0) < 0.1);
  CHECK(na.samples != nb.samples);

  Rng c(3);
  CHECK(AddNoise(utt, kNoNoise, c).samples == utt.samples);
  Utterance silent;
  silent.samples.assign(100, 0.0);
  CHECK(AddNoise(silent, 10.0, c).samples == silent.samples);
  CHECK_THROWS_AS(AddNoise(utt, std::nan(""), c), InputError);
}

TEST_CASE("synth: deterministic speakers") {
  auto s1 = SynthSpeaker(42, 3), s2 = SynthSpeaker(42, 3), s3 = SynthSpeaker(43, 3);
  CHECK(s1.f0 == s2.f0);
  CHECK(s1.harmonics == s2.harmonics);
  CHECK(s1.amplitudes == s2.amplitudes);
  CHECK(s1.f0 != s3.f0);
  CHECK(s1.harmonics.size() >= 4);
  CHECK(s1.harmonics.size() <= 8);
  for (int h : s1.harmonics) CHECK(h * s1.f0 < 4000.0);
  auto u1 = SynthUtterance(s1, 42, "spk003-utt00", 0.2);
  auto u2 = SynthUtterance(s1, 42, "spk003-utt00", 0.2);
  auto u3 = SynthUtterance(s1, 42, "spk003-utt01", 0.2);
  CHECK(u1.samples == u2.samples);
  CHECK(u1.samples != u3.samples);
}

TEST_CASE("synth: corpus counts and trial lists") {
  SynthCorpusOptions opts;
  opts.seconds = 0.1;
  opts.seed = 7;
  auto corpus = SynthesizeCorpus(opts);
  CHECK(corpus.utterances.size() == 200);
  std::size_t n_test = 0;
  for (bool t : corpus.is_test) n_test += t;
  CHECK(n_test == 80);

  std::map<std::string, std::string> speaker_of;
  std::set<std::string> test_ids;
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    speaker_of[corpus.utterances[i].utterance_id] = corpus.utterances[i].speaker_id;
    if (corpus.is_test[i]) test_ids.insert(corpus.utterances[i].utterance_id);
  }
  std::size_t targets = 0, nontargets = 0;
  std::set<std::pair<std::string, std::string>> seen;
  for (const Trial& t : corpus.test_trials) {
    CHECK(test_ids.count(t.enroll) == 1);
    CHECK(test_ids.count(t.test) == 1);
    CHECK(t.target == (speaker_of[t.enroll] == speaker_of[t.test]));
    auto key = std::minmax(t.enroll, t.test);
    CHECK(seen.insert({key.first, key.second}).second);
    (t.target ? targets : nontargets)++;
  }
  CHECK(targets >= 100);
  CHECK(nontargets >= 100);
  CHECK(targets == nontargets);
  CHECK_THROWS_AS(SynthesizeCorpus({1, 10, 1.0, 1}), InputError);
}

TEST_CASE("synth: speakers are spectrally separable") {
  FeatureConfig cfg;
  auto ltas = [&](const Utterance& u) {
    Tensor f = LogMel(u, cfg);
    const std::size_t T = f.dim(1);
    std::vector<double> s(80, 0.0);
    for (std::size_t m = 0; m < 80; ++m)
      for (std::size_t t = 0; t < T; ++t) s[m] += std::exp(f.data()[m * T + t]) / T;
    return s;
  };
  auto cosine = [](const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ab += a[i] * b[i];
      aa += a[i] * a[i];
      bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
  };
  double same = 0.0, diff = 0.0;
  for (std::size_t d = 0; d < 50; ++d) {
    auto sa = SynthSpeaker(100 + d, 0), sb = SynthSpeaker(100 + d, 1);
    auto a1 = ltas(SynthUtterance(sa, 100 + d, "a1", 0.5));
    auto a2 = ltas(SynthUtterance(sa, 100 + d, "a2", 0.5));
    auto b1 = ltas(SynthUtterance(sb, 100 + d, "b1", 0.5));
    same += cosine(a1, a2);
    diff += cosine(a1, b1);
  }
  CHECK(diff / 50 < same / 50);
}

TEST_CASE("trials: parse and round trip") {
  auto t = ParseTrials("1 a b\n\n# comment\n0 a c\n", "x");
  REQUIRE(t.size() == 2);
  CHECK(t[0].target);
  CHECK(t[1].test == "c");
  CHECK_THROWS_WITH_AS(ParseTrials("1 a b\n2 a b\n", "f"), doctest::Contains("f:2"), ParseError);
  CHECK_THROWS_AS(ParseTrials("1 a\n", "f"), ParseError);
  CHECK_THROWS_AS(ParseTrials("1 a b c\n", "f"), ParseError);
  const auto path = std::filesystem::temp_directory_path() / "dksv-trials.txt";
  WriteTrials(path.string(), t);
  auto back = ReadTrials(path.string());
  CHECK(back.size() == 2);
  CHECK(back[1].enroll == "a");
  CHECK_FALSE(back[1].target);
  std::filesystem::remove(path);
}
