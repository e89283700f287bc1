// src/numerics/param-archive.h

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

#ifndef DKSV_NUMERICS_PARAM_ARCHIVE_H_
#define DKSV_NUMERICS_PARAM_ARCHIVE_H_

// Versioned binary container mapping parameter paths to shaped double arrays.
// The byte layout is documented in docs/checkpoint-format.md.

#include <cstdint>
#include <string>
#include <vector>

#include "numerics/tensor.h"

namespace dksv {

inline constexpr std::uint32_t kParamArchiveVersion = 1;

struct ArchiveEntry {
  std::string path;
  Shape shape;
  std::vector<double> values;
};

struct ParamArchive {
  std::uint32_t version = kParamArchiveVersion;
  std::string header;  // free-form text, e.g. a serialized config
  std::vector<ArchiveEntry> entries;

  const ArchiveEntry* Find(const std::string& path) const;
};

void WriteParamArchive(const std::string& filename, const ParamArchive& archive);

/// Throws ParseError on bad magic, unsupported version, header checksum
/// mismatch or truncation; truncation errors name the parameter being read.
ParamArchive ReadParamArchive(const std::string& filename);

}  // namespace dksv

#endif  // DKSV_NUMERICS_PARAM_ARCHIVE_H_
