// src/model/model-config.cc

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

#include "model/model-config.h"

#include <sstream>

#include "base/error.h"
#include "base/key-value.h"
#include "base/random.h"

namespace dksv {

void ModelConfig::Validate() const {
  const std::size_t L = layer_channels.size();
  if (L < 2) throw ConfigError("model: need at least a stem and an aggregation layer");
  if (kernel_sizes.size() != L || dilations.size() != L) {
    throw ConfigError("model: layer_channels, kernel_sizes and dilations must have equal length (" +
                      std::to_string(L) + ", " + std::to_string(kernel_sizes.size()) + ", " +
                      std::to_string(dilations.size()) + ")");
  }
  if (scale == 0) throw ConfigError("model: scale must be positive");
  for (std::size_t i = 0; i < L; ++i) {
    if (layer_channels[i] == 0) throw ConfigError("model: layer " + std::to_string(i) + " has no channels");
    if (kernel_sizes[i] % 2 == 0) {
      throw ConfigError("model: kernel size of layer " + std::to_string(i) + " must be odd");
    }
    if (dilations[i] == 0) throw ConfigError("model: dilation must be positive");
  }
  for (std::size_t i = 1; i + 1 < L; ++i) {
    if (layer_channels[i] != channels()) {
      throw ConfigError("model: residual layer " + std::to_string(i) + " has " +
                        std::to_string(layer_channels[i]) + " channels, stem has " +
                        std::to_string(channels()));
    }
    if (channels() % scale != 0) {
      throw ConfigError("model: " + std::to_string(channels()) +
                        " channels not divisible by scale " + std::to_string(scale));
    }
  }
  if (num_kernels == 0) throw ConfigError("model: num_kernels must be at least 1");
  if (se_reduction == 0 || channels() / se_reduction == 0) {
    throw ConfigError("model: SE bottleneck would be empty");
  }
  if (att_channels == 0 || embedding_dim == 0 || n_mels == 0) {
    throw ConfigError("model: att_channels, embedding_dim and n_mels must be positive");
  }
  if (!(temperature > 0.0)) throw ConfigError("model: temperature must be positive");
}

std::size_t ModelConfig::pooled_channels() const {
  return mfa_channels ? mfa_channels : layer_channels.back();
}

std::size_t ModelConfig::aggregation_width() const {
  return num_hier_blocks() == 0 ? channels() : channels() * num_hier_blocks();
}

void ModelConfig::Set(const std::string& key, const std::string& value) {
  const std::string what = "model." + key;
  if (key == "name") {
    name = value;
  } else if (key == "layer_channels") {
    layer_channels = ParseSizeList(value, what);
  } else if (key == "kernel_sizes") {
    kernel_sizes = ParseSizeList(value, what);
  } else if (key == "dilations") {
    dilations = ParseSizeList(value, what);
  } else if (key == "mfa_channels") {
    mfa_channels = ParseSize(value, what);
  } else if (key == "num_kernels") {
    num_kernels = ParseSize(value, what);
  } else if (key == "scale") {
    scale = ParseSize(value, what);
  } else if (key == "se_reduction") {
    se_reduction = ParseSize(value, what);
  } else if (key == "att_channels") {
    att_channels = ParseSize(value, what);
  } else if (key == "embedding_dim") {
    embedding_dim = ParseSize(value, what);
  } else if (key == "n_mels") {
    n_mels = ParseSize(value, what);
  } else if (key == "temperature") {
    temperature = ParseDouble(value, what);
  } else {
    throw ConfigError("unknown model setting '" + key + "'");
  }
}

namespace {

std::string ArchitectureLines(const ModelConfig& c) {
  std::ostringstream out;
  out << "layer_channels=" << JoinSizes(c.layer_channels) << '\n'
      << "kernel_sizes=" << JoinSizes(c.kernel_sizes) << '\n'
      << "dilations=" << JoinSizes(c.dilations) << '\n'
      << "mfa_channels=" << c.pooled_channels() << '\n'
      << "num_kernels=" << c.num_kernels << '\n'
      << "scale=" << c.scale << '\n'
      << "se_reduction=" << c.se_reduction << '\n'
      << "att_channels=" << c.att_channels << '\n'
      << "embedding_dim=" << c.embedding_dim << '\n'
      << "n_mels=" << c.n_mels << '\n';
  return out.str();
}

}  // namespace

std::string ModelConfig::Serialize() const {
  return "name=" + name + "\n" + ArchitectureLines(*this) +
         "temperature=" + FormatDouble(temperature) + "\n";
}

ModelConfig ModelConfig::Parse(const std::string& text, const std::string& source) {
  ModelConfig cfg;
  for (const KeyValue& kv : ParseKeyValueText(text, source)) cfg.Set(kv.key, kv.value);
  cfg.Validate();
  return cfg;
}

std::uint64_t ModelConfig::Hash() const { return Fnv1a64(ArchitectureLines(*this)); }

ModelConfig Preset(const std::string& name) {
  ModelConfig c;
  c.name = name;
  if (name == "dconv3-small" || name == "dconv3") {
    const std::size_t C = name == "dconv3" ? 1024 : 512;
    c.layer_channels = {C, C, C};
    c.kernel_sizes = {5, 3, 1};
    c.dilations = {1, 2, 1};
  } else if (name == "dconv4-small" || name == "dconv4") {
    const std::size_t C = name == "dconv4" ? 1024 : 512;
    c.layer_channels = {C, C, C, C};
    c.kernel_sizes = {5, 3, 3, 1};
    c.dilations = {1, 2, 3, 1};
  } else if (name == "dconv5") {
    c.layer_channels = {1024, 1024, 1024, 1024, 1024};
    c.kernel_sizes = {5, 3, 3, 3, 1};
    c.dilations = {1, 2, 3, 4, 1};
  } else if (name == "tiny") {
    c.layer_channels = {64, 64, 64};
    c.kernel_sizes = {5, 3, 1};
    c.dilations = {1, 2, 1};
    c.num_kernels = 2;
  } else {
    std::string known;
    for (const auto& n : PresetNames()) known += " " + n;
    throw ConfigError("unknown preset '" + name + "'; known:" + known);
  }
  return c;
}

std::vector<std::string> PresetNames() {
  return {"dconv3-small", "dconv3", "dconv4-small", "dconv4", "dconv5", "tiny"};
}

}  // namespace dksv
