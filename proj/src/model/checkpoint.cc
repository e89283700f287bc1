// src/model/checkpoint.cc

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

#include "model/checkpoint.h"

#include <cinttypes>
#include <cstdio>

#include "base/error.h"
#include "base/key-value.h"
#include "numerics/param-archive.h"

namespace dksv {

namespace {

constexpr const char* kHashKey = "config_hash";

std::string HexHash(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

struct Header {
  ModelConfig cfg;
  std::string hash;
  std::vector<KeyValue> extra;
};

Header SplitHeader(const ParamArchive& archive, const std::string& path) {
  Header h;
  std::string cfg_text;
  for (const KeyValue& kv : ParseKeyValueText(archive.header, path + " header")) {
    if (kv.key == kHashKey) {
      h.hash = kv.value;
    } else if (kv.key.find('.') != std::string::npos) {
      h.extra.push_back(kv);
    } else {
      cfg_text += kv.key + "=" + kv.value + "\n";
    }
  }
  h.cfg = ModelConfig::Parse(cfg_text, path + " header");
  if (h.hash.empty()) throw ParseError(path + ": checkpoint header lacks " + kHashKey);
  return h;
}

}  // namespace

void SaveCheckpoint(const std::string& path, const ModelConfig& cfg, const NamedState& state,
                    const std::string& extra_header) {
  ParamArchive archive;
  archive.header = cfg.Serialize() + kHashKey + "=" + HexHash(cfg.Hash()) + "\n" + extra_header;
  for (const auto& [name, t] : state.params) {
    archive.entries.push_back({name, t.shape(), {t.data().begin(), t.data().end()}});
  }
  for (const auto& [name, buf] : state.buffers) {
    archive.entries.push_back({name, {buf->size()}, *buf});
  }
  WriteParamArchive(path, archive);
}

void SaveCheckpoint(const std::string& path, const SpeakerModel& model) {
  SaveCheckpoint(path, model.config(), model.State());
}

ModelConfig ReadCheckpointConfig(const std::string& path) {
  return SplitHeader(ReadParamArchive(path), path).cfg;
}

std::vector<KeyValue> ReadCheckpointExtras(const std::string& path) {
  return SplitHeader(ReadParamArchive(path), path).extra;
}

std::string CheckpointHeaderValue(const std::string& path, const std::string& key) {
  for (const KeyValue& kv : SplitHeader(ReadParamArchive(path), path).extra) {
    if (kv.key == key) return kv.value;
  }
  return "";
}

void LoadCheckpoint(const std::string& path, const ModelConfig& cfg, const NamedState& state) {
  const ParamArchive archive = ReadParamArchive(path);
  const Header header = SplitHeader(archive, path);
  if (header.hash != HexHash(cfg.Hash()) || header.cfg.Hash() != cfg.Hash()) {
    throw ConfigError(path + ": checkpoint is incompatible with this model (config hash " +
                      header.hash + ", expected " + HexHash(cfg.Hash()) + ")");
  }
  auto lookup = [&](const std::string& name, std::size_t size) -> const ArchiveEntry& {
    const ArchiveEntry* e = archive.Find(name);
    if (!e) throw ParseError(path + ": missing parameter '" + name + "'");
    if (e->values.size() != size) {
      throw ParseError(path + ": parameter '" + name + "' has " +
                       std::to_string(e->values.size()) + " values, expected " +
                       std::to_string(size));
    }
    return *e;
  };
  std::vector<const ArchiveEntry*> params, buffers;
  for (const auto& [name, t] : state.params) {
    const ArchiveEntry& e = lookup(name, t.size());
    if (e.shape != t.shape()) {
      throw ParseError(path + ": parameter '" + name + "' has shape " + ShapeToString(e.shape) +
                       ", expected " + ShapeToString(t.shape()));
    }
    params.push_back(&e);
  }
  for (const auto& [name, buf] : state.buffers) buffers.push_back(&lookup(name, buf->size()));

  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor t = state.params[i].second;
    std::copy(params[i]->values.begin(), params[i]->values.end(), t.mutable_data().begin());
  }
  for (std::size_t i = 0; i < buffers.size(); ++i) *state.buffers[i].second = buffers[i]->values;
}

SpeakerModel LoadModel(const std::string& path) {
  SpeakerModel model(ReadCheckpointConfig(path));
  LoadCheckpoint(path, model.config(), model.State());
  return model;
}

}  // namespace dksv
