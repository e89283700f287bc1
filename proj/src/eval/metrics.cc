// src/eval/metrics.cc

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

#include "eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "base/error.h"
#include "base/key-value.h"

namespace dksv {

std::size_t ScoreSet::num_targets() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
}

void ScoreSet::Validate() const {
  if (labels.size() != scores.size()) throw InputError("score set: label/score length mismatch");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw InputError("score set: non-finite score at trial " + std::to_string(i));
    }
  }
  if (num_targets() == 0 || num_nontargets() == 0) {
    throw InputError("score set: need at least one target and one nontarget trial");
  }
}

void DcfParams::Validate() const {
  if (!(p_target > 0.0 && p_target < 1.0)) throw ConfigError("dcf: p_target must lie in (0, 1)");
  if (!(c_miss > 0.0 && c_fa > 0.0) || !std::isfinite(c_miss) || !std::isfinite(c_fa)) {
    throw ConfigError("dcf: costs must be positive and finite");
  }
}

void DcfParams::Set(const std::string& key, const std::string& value) {
  const std::string what = "dcf." + key;
  if (key == "p_target") {
    p_target = ParseDouble(value, what);
  } else if (key == "c_miss") {
    c_miss = ParseDouble(value, what);
  } else if (key == "c_fa") {
    c_fa = ParseDouble(value, what);
  } else {
    throw ConfigError("unknown dcf setting '" + key + "'");
  }
}

std::vector<OperatingPoint> SweepThresholds(const ScoreSet& s) {
  s.Validate();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.scores[a] < s.scores[b]; });
  const double nt = static_cast<double>(s.num_targets());
  const double nn = static_cast<double>(s.num_nontargets());

  std::vector<OperatingPoint> points;
  points.push_back({-inf, 0.0, 1.0});
  // Trials strictly below the current threshold are rejected.
  std::size_t missed = 0, rejected_nontargets = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = s.scores[order[i]];
    points.push_back({t, missed / nt, (nn - rejected_nontargets) / nn});
    for (; i < order.size() && s.scores[order[i]] == t; ++i) {
      if (s.labels[order[i]]) {
        ++missed;
      } else {
        ++rejected_nontargets;
      }
    }
  }
  points.push_back({inf, 1.0, 0.0});
  return points;
}

MetricValue ComputeEer(const ScoreSet& scores) {
  const auto pts = SweepThresholds(scores);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = pts[i].p_fa - pts[i].p_miss;
    if (d > 0.0) continue;
    const OperatingPoint& a = pts[i - 1];
    const OperatingPoint& b = pts[i];
    const double da = a.p_fa - a.p_miss;
    const double frac = d == 0.0 ? 1.0 : da / (da - d);
    const double threshold = std::isfinite(b.threshold) ? b.threshold : a.threshold;
    return {a.p_miss + frac * (b.p_miss - a.p_miss), threshold};
  }
  throw InputError("eer: no crossing found");  // unreachable: the last point has p_fa = 0
}

double DetectionCost(const OperatingPoint& op, const DcfParams& p) {
  const double cost = p.c_miss * p.p_target * op.p_miss + p.c_fa * (1.0 - p.p_target) * op.p_fa;
  return cost / std::min(p.c_miss * p.p_target, p.c_fa * (1.0 - p.p_target));
}

MetricValue ComputeMinDcf(const ScoreSet& scores, const DcfParams& params) {
  params.Validate();
  const auto pts = SweepThresholds(scores);
  MetricValue best{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& op : pts) {
    const double c = DetectionCost(op, params);
    if (c < best.value) best = {c, op.threshold};
  }
  return best;
}

}  // namespace dksv
