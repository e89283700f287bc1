// src/train/classifier-head.cc

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

#include "train/classifier-head.h"

#include <string>

#include "base/error.h"

namespace dksv {

ClassifierHead::ClassifierHead(std::size_t embedding_dim, std::size_t n_speakers)
    : dense(embedding_dim, n_speakers) {
  if (n_speakers < 2) {
    throw ConfigError("classifier head needs at least 2 speakers, got " +
                      std::to_string(n_speakers));
  }
}

}  // namespace dksv
