// src/cli/data-dir.h

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

#ifndef DKSV_CLI_DATA_DIR_H_
#define DKSV_CLI_DATA_DIR_H_

// On-disk corpus layout written by `dksv synth`:
//   manifest.txt, train-manifest.txt, test-manifest.txt
//       `utt_id speaker_id path` per line, paths relative to the file
//   train-trials.txt, test-trials.txt
//   wav/<utt_id>.wav

#include <string>
#include <vector>

#include "frontend/synth-corpus.h"
#include "frontend/wav.h"

namespace dksv {

struct ManifestEntry {
  std::string utterance_id;
  std::string speaker_id;
  std::string path;  // resolved against the manifest's directory
};

std::vector<ManifestEntry> ReadManifest(const std::string& path);
void WriteManifest(const std::string& path, const std::vector<ManifestEntry>& entries);

/// Reads every listed WAV. Throws InputError on duplicate ids.
std::vector<Utterance> LoadUtterances(const std::vector<ManifestEntry>& entries);

/// Writes the corpus under `dir`, creating it if needed.
void WriteCorpus(const std::string& dir, const SynthCorpus& corpus);

}  // namespace dksv

#endif  // DKSV_CLI_DATA_DIR_H_
