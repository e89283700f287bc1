// src/model/model-config.h

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

#ifndef DKSV_MODEL_MODEL_CONFIG_H_
#define DKSV_MODEL_MODEL_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dksv {

/// Architecture of an embedding extractor.
///
/// Layer 0 is the stem dconv (n_mels -> C). Layers 1..L-2 are hierarchical
/// residual blocks of width C. The last layer is a kernel-1 dconv fed with
/// the concatenation of all hierarchical block outputs (the stem output if
/// there are none) and producing mfa_channels, which are pooled to
/// 2 * mfa_channels and projected to embedding_dim.
struct ModelConfig {
  std::string name = "custom";
  std::vector<std::size_t> layer_channels = {512, 512, 512};
  std::vector<std::size_t> kernel_sizes = {5, 3, 1};
  std::vector<std::size_t> dilations = {1, 2, 1};
  std::size_t mfa_channels = 0;  // 0: last layer_channels entry
  std::size_t num_kernels = 4;
  std::size_t scale = 2;
  std::size_t se_reduction = 8;
  std::size_t att_channels = 128;
  std::size_t embedding_dim = 192;
  std::size_t n_mels = 80;
  double temperature = 1.0;

  void Validate() const;
  std::size_t channels() const { return layer_channels.front(); }
  std::size_t num_hier_blocks() const { return layer_channels.size() - 2; }
  std::size_t pooled_channels() const;
  /// Width entering the aggregation layer.
  std::size_t aggregation_width() const;

  /// Sets one field from text; throws ConfigError for unknown keys or bad
  /// values.
  void Set(const std::string& key, const std::string& value);

  /// Canonical `key=value` lines, readable by Parse.
  std::string Serialize() const;
  static ModelConfig Parse(const std::string& text, const std::string& name);

  /// FNV-1a over the architecture-defining fields (not name or temperature).
  std::uint64_t Hash() const;
};

/// Named architectures: dconv3-small, dconv3, dconv4-small, dconv4, dconv5
/// and the desk-scale "tiny".
ModelConfig Preset(const std::string& name);
std::vector<std::string> PresetNames();

}  // namespace dksv

#endif  // DKSV_MODEL_MODEL_CONFIG_H_
