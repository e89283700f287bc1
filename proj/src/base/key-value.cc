// src/base/key-value.cc

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

#include "base/key-value.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "base/error.h"

namespace dksv {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void Bad(const std::string& what, const std::string& s, const char* expected) {
  throw ConfigError(what + ": expected " + expected + ", got '" + s + "'");
}

}  // namespace

std::vector<KeyValue> ParseKeyValueText(const std::string& text, const std::string& name) {
  std::vector<KeyValue> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    KeyValue kv{Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)), lineno};
    if (kv.key.empty()) throw ConfigError(name + ":" + std::to_string(lineno) + ": empty key");
    out.push_back(std::move(kv));
  }
  return out;
}

std::vector<KeyValue> ReadKeyValueFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseKeyValueText(ss.str(), path);
}

std::uint64_t ParseU64(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    Bad(what, s, "a non-negative integer");
  }
  return v;
}

std::size_t ParseSize(const std::string& s, const std::string& what) {
  return static_cast<std::size_t>(ParseU64(s, what));
}

double ParseDouble(const std::string& s, const std::string& what) {
  if (s == "inf" || s == "+inf") return INFINITY;
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) Bad(what, s, "a number");
  return v;
}

bool ParseBool(const std::string& s, const std::string& what) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  Bad(what, s, "true or false");
}

std::vector<std::size_t> ParseSizeList(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(ParseSize(Trim(s.substr(start, comma - start)), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string JoinSizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

}  // namespace dksv
