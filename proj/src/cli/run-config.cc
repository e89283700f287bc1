// src/cli/run-config.cc

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

#include "cli/run-config.h"

#include "base/error.h"
#include "base/key-value.h"

namespace dksv {

void RunConfig::Set(const std::string& key, const std::string& value) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) throw ConfigError("setting '" + key + "' has no section prefix");
  const std::string section = key.substr(0, dot), rest = key.substr(dot + 1);
  if (section == "feature") {
    feature.Set(rest, value);
  } else if (section == "model") {
    model.Set(rest, value);
  } else if (section == "train") {
    train.Set(rest, value);
  } else if (section == "dcf") {
    dcf.Set(rest, value);
  } else {
    throw ConfigError("unknown setting section '" + section + "' in '" + key + "'");
  }
}

void RunConfig::ApplyFile(const std::string& path) {
  for (const KeyValue& kv : ReadKeyValueFile(path)) {
    try {
      Set(kv.key, kv.value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(kv.line) + ": " + e.what());
    }
  }
}

void RunConfig::Validate() const {
  feature.Validate();
  model.Validate();
  train.Validate();
  dcf.Validate();
  if (feature.n_mels != model.n_mels) {
    throw ConfigError("feature.n_mels (" + std::to_string(feature.n_mels) +
                      ") differs from model.n_mels (" + std::to_string(model.n_mels) + ")");
  }
}

std::string RunConfig::Serialize() const {
  std::string out = feature.Serialize("feature.");
  for (const KeyValue& kv : ParseKeyValueText(model.Serialize(), "model")) {
    out += "model." + kv.key + "=" + kv.value + "\n";
  }
  return out;
}

std::pair<std::string, std::string> SplitAssignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("expected key=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

void CheckPresetName(const std::string& name) {
  std::string valid;
  for (const auto& p : PresetNames()) {
    if (p == name) return;
    valid += (valid.empty() ? "" : ", ") + p;
  }
  throw UsageError("unknown preset '" + name + "'; valid presets: " + valid);
}

RunConfig LoadRunConfig(const std::string& preset, const std::string& config_file,
                        const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (!preset.empty()) {
    CheckPresetName(preset);
    cfg.model = Preset(preset);
  }
  if (!config_file.empty()) cfg.ApplyFile(config_file);
  for (const auto& o : overrides) {
    const auto [k, v] = SplitAssignment(o);
    cfg.Set(k, v);
  }
  return cfg;
}

}  // namespace dksv
