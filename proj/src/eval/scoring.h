// src/eval/scoring.h

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

#ifndef DKSV_EVAL_SCORING_H_
#define DKSV_EVAL_SCORING_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "eval/metrics.h"
#include "frontend/mel-features.h"
#include "frontend/trials.h"
#include "frontend/wav.h"
#include "model/speaker-model.h"

namespace dksv {

/// dot(a, b) / (|a| |b|). Throws NumericError for a zero vector and
/// DimensionError for a length mismatch.
double CosineScore(std::span<const double> a, std::span<const double> b);

using EmbeddingTable = std::map<std::string, SpeakerEmbedding>;

struct EmbedStats {
  std::size_t requested = 0;  // ids asked for, with repeats
  std::size_t computed = 0;   // forward passes run
  std::size_t cache_hits = 0;
};

/// Embeds every distinct id once. Throws InputError listing every id missing
/// from `corpus`, before any forward pass.
EmbeddingTable EmbedUtterances(const SpeakerModel& model, const std::vector<Utterance>& corpus,
                               const std::vector<std::string>& ids, const FeatureConfig& feat,
                               EmbedStats* stats = nullptr);

/// Ids in trial order (enroll, test), repeats kept.
std::vector<std::string> TrialIds(const std::vector<Trial>& trials);

void WriteEmbeddings(const std::string& path, const EmbeddingTable& table);
EmbeddingTable ReadEmbeddings(const std::string& path);

struct ScoredTrial {
  Trial trial;
  double score = 0.0;
};

/// Throws InputError listing every trial id absent from `table`.
std::vector<ScoredTrial> ScoreTrials(const EmbeddingTable& table, const std::vector<Trial>& trials);

/// `<label> <enroll_id> <test_id> <score>` per line, label 1 = target.
void WriteScores(const std::string& path, const std::vector<ScoredTrial>& scored);
std::vector<ScoredTrial> ParseScores(const std::string& text, const std::string& name);
std::vector<ScoredTrial> ReadScores(const std::string& path);

ScoreSet ToScoreSet(const std::vector<ScoredTrial>& scored);

struct ScoreSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct EvalReport {
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
  MetricValue eer;
  MetricValue min_dcf;
  DcfParams dcf;
  ScoreSummary target_scores;
  ScoreSummary nontarget_scores;
  std::vector<OperatingPoint> det;
  EmbedStats embed;  // zero when built from a score file
};

EvalReport Summarize(const std::vector<ScoredTrial>& scored, const DcfParams& dcf);

/// Embeds, scores and summarizes; `scored` receives the per-trial scores.
EvalReport Evaluate(const SpeakerModel& model, const std::vector<Utterance>& corpus,
                    const std::vector<Trial>& trials, const FeatureConfig& feat,
                    const DcfParams& dcf, std::vector<ScoredTrial>* scored = nullptr);

/// key=value lines.
std::string FormatReport(const EvalReport& report);
/// `p_miss,p_fa,threshold` with a header line.
std::string FormatDetCsv(const std::vector<OperatingPoint>& det);

}  // namespace dksv

#endif  // DKSV_EVAL_SCORING_H_
