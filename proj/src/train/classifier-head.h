// src/train/classifier-head.h

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

#ifndef DKSV_TRAIN_CLASSIFIER_HEAD_H_
#define DKSV_TRAIN_CLASSIFIER_HEAD_H_

#include <cstddef>

#include "blocks/layer-state.h"

namespace dksv {

/// Softmax classifier over training speakers: dense embedding_dim -> S.
class ClassifierHead {
 public:
  ClassifierHead(std::size_t embedding_dim, std::size_t n_speakers);

  void Init(Rng& rng) { dense.Init(rng); }
  Tensor Forward(const Tensor& embeddings) const { return dense.Forward(embeddings); }
  void Collect(NamedState& out) const { dense.Collect("head", out); }
  std::size_t n_speakers() const { return dense.out(); }

  Linear dense;
};

}  // namespace dksv

#endif  // DKSV_TRAIN_CLASSIFIER_HEAD_H_
