// src/frontend/trials.h

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

#ifndef DKSV_FRONTEND_TRIALS_H_
#define DKSV_FRONTEND_TRIALS_H_

#include <string>
#include <vector>

namespace dksv {

struct Trial {
  bool target = false;
  std::string enroll;
  std::string test;
};

/// `<label 0|1> <enroll_utt_id> <test_utt_id>` per line; blank lines and
/// lines starting with '#' are skipped. Throws ParseError naming the line.
std::vector<Trial> ReadTrials(const std::string& path);
std::vector<Trial> ParseTrials(const std::string& text, const std::string& name);
void WriteTrials(const std::string& path, const std::vector<Trial>& trials);

}  // namespace dksv

#endif  // DKSV_FRONTEND_TRIALS_H_
