// src/cli/data-dir.cc

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

#include "cli/data-dir.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "base/error.h"
#include "frontend/trials.h"

namespace dksv {

namespace fs = std::filesystem;

std::vector<ManifestEntry> ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("missing manifest: " + path);
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestEntry> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream ls(line);
    ManifestEntry e;
    std::string extra;
    if (!(ls >> e.utterance_id)) continue;
    if (!(ls >> e.speaker_id >> e.path) || (ls >> extra)) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": expected '<utt_id> <speaker_id> <path>'");
    }
    if (fs::path(e.path).is_relative()) e.path = (base / e.path).string();
    out.push_back(std::move(e));
  }
  return out;
}

void WriteManifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& e : entries) out << e.utterance_id << ' ' << e.speaker_id << ' ' << e.path << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<Utterance> LoadUtterances(const std::vector<ManifestEntry>& entries) {
  std::set<std::string> seen;
  std::vector<Utterance> utts;
  for (const auto& e : entries) {
    if (!seen.insert(e.utterance_id).second) {
      throw InputError("duplicate utterance id '" + e.utterance_id + "'");
    }
    Utterance u = ReadWav(e.path);
    u.utterance_id = e.utterance_id;
    u.speaker_id = e.speaker_id;
    utts.push_back(std::move(u));
  }
  return utts;
}

void WriteCorpus(const std::string& dir, const SynthCorpus& corpus) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "wav", ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  std::vector<ManifestEntry> all, train, test;
  for (std::size_t i = 0; i < corpus.utterances.size(); ++i) {
    const Utterance& u = corpus.utterances[i];
    ManifestEntry e{u.utterance_id, u.speaker_id, "wav/" + u.utterance_id + ".wav"};
    WriteWav((fs::path(dir) / e.path).string(), u.samples, u.sample_rate);
    all.push_back(e);
    (corpus.is_test[i] ? test : train).push_back(e);
  }
  WriteManifest((fs::path(dir) / "manifest.txt").string(), all);
  WriteManifest((fs::path(dir) / "train-manifest.txt").string(), train);
  WriteManifest((fs::path(dir) / "test-manifest.txt").string(), test);
  WriteTrials((fs::path(dir) / "train-trials.txt").string(), corpus.train_trials);
  WriteTrials((fs::path(dir) / "test-trials.txt").string(), corpus.test_trials);
}

}  // namespace dksv
