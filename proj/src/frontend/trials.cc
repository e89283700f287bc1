// src/frontend/trials.cc

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

#include "frontend/trials.h"

#include <fstream>
#include <sstream>

#include "base/error.h"

namespace dksv {

std::vector<Trial> ParseTrials(const std::string& text, const std::string& name) {
  std::vector<Trial> trials;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string label, enroll, test, extra;
    if (!(fields >> label) || label[0] == '#') continue;
    auto fail = [&](const std::string& what) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": " + what);
    };
    if (label != "0" && label != "1") fail("label must be 0 or 1, got '" + label + "'");
    if (!(fields >> enroll >> test)) fail("expected '<label> <enroll> <test>'");
    if (fields >> extra) fail("trailing field '" + extra + "'");
    trials.push_back({label == "1", enroll, test});
  }
  return trials;
}

std::vector<Trial> ReadTrials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trial list '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseTrials(ss.str(), path);
}

void WriteTrials(const std::string& path, const std::vector<Trial>& trials) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const Trial& t : trials) {
    out << (t.target ? 1 : 0) << ' ' << t.enroll << ' ' << t.test << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace dksv
