// src/base/key-value.h

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

#ifndef DKSV_BASE_KEY_VALUE_H_
#define DKSV_BASE_KEY_VALUE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dksv {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// `key = value` lines; '#' starts a comment, blank lines are skipped.
/// Throws ConfigError on lines without '=' or with an empty key.
std::vector<KeyValue> ParseKeyValueText(const std::string& text, const std::string& name);
std::vector<KeyValue> ReadKeyValueFile(const std::string& path);

// Strict scalar parsers; the whole string must be consumed. `what` names the
// setting in error messages.
std::size_t ParseSize(const std::string& s, const std::string& what);
std::uint64_t ParseU64(const std::string& s, const std::string& what);
double ParseDouble(const std::string& s, const std::string& what);
bool ParseBool(const std::string& s, const std::string& what);
/// Comma-separated list of sizes, e.g. "5,3,1".
std::vector<std::size_t> ParseSizeList(const std::string& s, const std::string& what);
std::string JoinSizes(const std::vector<std::size_t>& v);
/// Shortest decimal form that reads back to the same double.
std::string FormatDouble(double v);

}  // namespace dksv

#endif  // DKSV_BASE_KEY_VALUE_H_
