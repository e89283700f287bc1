// src/frontend/wav.cc

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

#include "frontend/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "base/error.h"

namespace dksv {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  ByteReader(const std::vector<char>& bytes, const std::string& name)
      : b_(bytes), name_(name) {}

  [[noreturn]] void Fail(const std::string& what, std::size_t offset) const {
    throw ParseError(name_ + ": " + what + " at byte offset " + std::to_string(offset));
  }
  void Need(std::size_t pos, std::size_t n, const char* what) const {
    if (pos + n > b_.size()) Fail(std::string("truncated ") + what, pos);
  }
  std::uint16_t U16(std::size_t pos) const {
    Need(pos, 2, "field");
    return static_cast<std::uint16_t>(Byte(pos) | (Byte(pos + 1) << 8));
  }
  std::uint32_t U32(std::size_t pos) const {
    Need(pos, 4, "field");
    return Byte(pos) | (Byte(pos + 1) << 8) | (Byte(pos + 2) << 16) |
           (static_cast<std::uint32_t>(Byte(pos + 3)) << 24);
  }
  bool Tag(std::size_t pos, const char* tag) const {
    Need(pos, 4, "chunk id");
    return std::memcmp(b_.data() + pos, tag, 4) == 0;
  }
  std::size_t size() const { return b_.size(); }

 private:
  std::uint32_t Byte(std::size_t pos) const {
    return static_cast<unsigned char>(b_[pos]);
  }
  const std::vector<char>& b_;
  const std::string& name_;
};

}  // namespace

std::vector<double> ResampleLinear(const std::vector<double>& in, int from_rate,
                                   int to_rate) {
  if (from_rate <= 0 || to_rate <= 0) throw InputError("sample rates must be positive");
  if (from_rate == to_rate || in.empty()) return in;
  const double ratio = static_cast<double>(from_rate) / to_rate;
  const std::size_t n = static_cast<std::size_t>(
      std::floor((in.size() - 1) / ratio)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = i * ratio;
    const std::size_t i0 = static_cast<std::size_t>(pos);
    const std::size_t i1 = std::min(i0 + 1, in.size() - 1);
    const double frac = pos - i0;
    out[i] = (1.0 - frac) * in[i0] + frac * in[i1];
  }
  return out;
}

Utterance ParseWav(const std::vector<char>& bytes, const std::string& name) {
  ByteReader r(bytes, name);
  if (!r.Tag(0, "RIFF")) r.Fail("missing RIFF tag", 0);
  if (!r.Tag(8, "WAVE")) r.Fail("missing WAVE tag", 8);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t fmt_pos = 0;
  std::size_t pos = 12;
  while (true) {
    if (pos + 8 > r.size()) r.Fail("no data chunk found", pos);
    const std::uint32_t chunk_size = r.U32(pos + 4);
    if (r.Tag(pos, "fmt ")) {
      if (chunk_size < 16) r.Fail("fmt chunk too small", pos);
      fmt_pos = pos;
      format = r.U16(pos + 8);
      channels = r.U16(pos + 10);
      rate = r.U32(pos + 12);
      bits = r.U16(pos + 22);
      if (format == kFormatExtensible) {
        if (chunk_size < 40) r.Fail("extensible fmt chunk too small", pos);
        format = r.U16(pos + 32);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (r.Tag(pos, "data")) {
      if (!have_fmt) r.Fail("data chunk before fmt chunk", pos);
      break;
    }
    pos += 8 + chunk_size + (chunk_size & 1);
  }

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    r.Fail("unsupported codec (format " + std::to_string(format) + ", " +
               std::to_string(bits) + " bits); need PCM16 or float32",
           fmt_pos + 8);
  }
  if (channels != 1 && channels != 2) {
    r.Fail("unsupported channel count " + std::to_string(channels), fmt_pos + 10);
  }
  if (rate == 0) r.Fail("zero sample rate", fmt_pos + 12);

  const std::size_t data_pos = pos + 8;
  const std::size_t frame_bytes = channels * (bits / 8);
  std::size_t data_size = r.U32(pos + 4);
  if (data_pos + data_size > r.size()) r.Fail("data chunk truncated", data_pos);
  const std::size_t frames = data_size / frame_bytes;

  Utterance utt;
  utt.utterance_id = name;
  utt.samples.resize(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const std::size_t at = data_pos + f * frame_bytes + c * (bits / 8);
      if (pcm16) {
        acc += static_cast<std::int16_t>(r.U16(at)) / 32768.0;
      } else {
        const float v = std::bit_cast<float>(r.U32(at));
        if (!std::isfinite(v)) r.Fail("non-finite float sample", at);
        acc += v;
      }
    }
    utt.samples[f] = acc / channels;
  }
  utt.samples = ResampleLinear(utt.samples, static_cast<int>(rate), kTargetSampleRate);
  utt.sample_rate = kTargetSampleRate;
  return utt;
}

Utterance ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return ParseWav(bytes, path);
}

void WriteWav(const std::string& path, const std::vector<double>& samples,
              int sample_rate) {
  std::vector<char> out;
  auto u16 = [&](std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
  };
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  auto tag = [&](const char* t) { out.insert(out.end(), t, t + 4); };
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  tag("RIFF");
  u32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(kFormatPcm);
  u16(1);
  u32(static_cast<std::uint32_t>(sample_rate));
  u32(static_cast<std::uint32_t>(sample_rate * 2));
  u16(2);
  u16(16);
  tag("data");
  u32(data_bytes);
  for (double s : samples) {
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
    u16(static_cast<std::uint16_t>(
        static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0))));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace dksv
