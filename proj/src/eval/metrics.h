// src/eval/metrics.h

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

#ifndef DKSV_EVAL_METRICS_H_
#define DKSV_EVAL_METRICS_H_

#include <cstddef>
#include <string>
#include <vector>

namespace dksv {

/// Parallel label/score arrays.
struct ScoreSet {
  std::vector<bool> labels;  // true = target
  std::vector<double> scores;

  void Add(bool target, double score) {
    labels.push_back(target);
    scores.push_back(score);
  }
  std::size_t size() const { return scores.size(); }
  std::size_t num_targets() const;
  std::size_t num_nontargets() const { return size() - num_targets(); }

  /// Throws InputError on length mismatch, non-finite scores, or a label set
  /// lacking targets or nontargets.
  void Validate() const;
};

struct DcfParams {
  double p_target = 0.01;
  double c_miss = 1.0;
  double c_fa = 1.0;

  void Validate() const;
  void Set(const std::string& key, const std::string& value);
};

/// Accept iff score >= threshold.
struct OperatingPoint {
  double threshold = 0.0;
  double p_miss = 0.0;
  double p_fa = 0.0;
};

/// Operating points at -inf, every distinct score in ascending order, and
/// +inf. P_miss is nondecreasing and P_fa nonincreasing along the list.
std::vector<OperatingPoint> SweepThresholds(const ScoreSet& scores);

struct MetricValue {
  double value = 0.0;
  double threshold = 0.0;
};

/// Equal error rate on the piecewise-linear ROC through the swept points.
/// The threshold is that of the first swept point with P_miss >= P_fa.
MetricValue ComputeEer(const ScoreSet& scores);

/// Minimum normalized detection cost over the swept thresholds.
MetricValue ComputeMinDcf(const ScoreSet& scores, const DcfParams& params);

double DetectionCost(const OperatingPoint& op, const DcfParams& params);

}  // namespace dksv

#endif  // DKSV_EVAL_METRICS_H_
