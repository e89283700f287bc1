// src/numerics/param-archive.cc

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

#include "numerics/param-archive.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "base/error.h"
#include "base/random.h"

namespace dksv {

namespace {

constexpr char kMagic[8] = {'D', 'K', 'S', 'V', 'P', 'A', 'R', '\0'};
constexpr char kTrailer[8] = {'D', 'K', 'S', 'V', 'E', 'N', 'D', '\0'};

class Writer {
 public:
  void Bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const char*>(p);
    buf_.insert(buf_.end(), c, c + n);
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  const std::vector<char>& buffer() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> buf) : buf_(std::move(buf)) {}

  void Need(std::size_t n, const std::string& what) {
    if (pos_ + n > buf_.size()) {
      throw ParseError("checkpoint truncated at byte " + std::to_string(buf_.size()) +
                       " while reading " + what);
    }
  }
  std::uint32_t U32(const std::string& what) {
    Need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t U64(const std::string& what) {
    Need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  double F64(const std::string& what) { return std::bit_cast<double>(U64(what)); }
  std::string Str(std::size_t n, const std::string& what) {
    Need(n, what);
    std::string s(buf_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }
  std::size_t size() const { return buf_.size(); }

 private:
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

}  // namespace

const ArchiveEntry* ParamArchive::Find(const std::string& path) const {
  for (const ArchiveEntry& e : entries)
    if (e.path == path) return &e;
  return nullptr;
}

void WriteParamArchive(const std::string& filename, const ParamArchive& archive) {
  Writer w;
  w.Bytes(kMagic, sizeof(kMagic));
  w.U32(archive.version);
  w.U64(archive.header.size());
  w.Bytes(archive.header.data(), archive.header.size());
  w.U64(Fnv1a64(archive.header));
  w.U32(static_cast<std::uint32_t>(archive.entries.size()));
  for (const ArchiveEntry& e : archive.entries) {
    if (NumElements(e.shape) != e.values.size()) {
      throw DimensionError("archive entry '" + e.path + "' has inconsistent shape");
    }
    w.U32(static_cast<std::uint32_t>(e.path.size()));
    w.Bytes(e.path.data(), e.path.size());
    w.U32(static_cast<std::uint32_t>(e.shape.size()));
    for (std::size_t d : e.shape) w.U64(d);
    for (double v : e.values) w.F64(v);
  }
  w.Bytes(kTrailer, sizeof(kTrailer));

  std::ofstream out(filename, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + filename + "' for writing");
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw IoError("write to '" + filename + "' failed");
}

ParamArchive ReadParamArchive(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + filename + "'");
  std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  Reader r(std::move(buf));

  if (r.Str(sizeof(kMagic), "magic") != std::string(kMagic, sizeof(kMagic))) {
    throw ParseError("'" + filename + "' is not a dksv checkpoint (bad magic at byte 0)");
  }
  ParamArchive archive;
  archive.version = r.U32("format version");
  if (archive.version != kParamArchiveVersion) {
    throw ParseError("checkpoint format version " + std::to_string(archive.version) +
                     " unsupported (expected " + std::to_string(kParamArchiveVersion) +
                     ")");
  }
  const std::uint64_t header_len = r.U64("header length");
  archive.header = r.Str(header_len, "header");
  if (r.U64("header checksum") != Fnv1a64(archive.header)) {
    throw ParseError("checkpoint header checksum mismatch");
  }
  const std::uint32_t count = r.U32("entry count");
  for (std::uint32_t i = 0; i < count; ++i) {
    ArchiveEntry e;
    const std::string slot =
        "entry #" + std::to_string(i) +
        (archive.entries.empty() ? std::string()
                                 : " (after parameter '" + archive.entries.back().path + "')");
    const std::uint32_t plen = r.U32(slot + " path length");
    e.path = r.Str(plen, slot + " path");
    const std::string what = "parameter '" + e.path + "'";
    const std::uint32_t rank = r.U32(what + " rank");
    if (rank == 0 || rank > 8) {
      throw ParseError("implausible rank " + std::to_string(rank) + " for " + what +
                       " at byte " + std::to_string(r.pos()));
    }
    for (std::uint32_t a = 0; a < rank; ++a) e.shape.push_back(r.U64(what + " shape"));
    const std::size_t n = NumElements(e.shape);
    r.Need(n * 8, what + " values");
    e.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) e.values[k] = r.F64(what);
    archive.entries.push_back(std::move(e));
  }
  if (r.Str(sizeof(kTrailer), "trailer") != std::string(kTrailer, sizeof(kTrailer))) {
    throw ParseError("checkpoint trailer missing at byte " + std::to_string(r.pos()));
  }
  return archive;
}

}  // namespace dksv
