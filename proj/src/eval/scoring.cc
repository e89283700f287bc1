// src/eval/scoring.cc

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

#include "eval/scoring.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include "base/error.h"
#include "base/key-value.h"
#include "numerics/kernels.h"
#include "numerics/param-archive.h"

namespace dksv {

namespace {

constexpr const char* kEmbeddingHeader = "content=speaker-embeddings\n";

std::string G17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string JoinIds(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
  return out;
}

ScoreSummary Summary(const std::vector<double>& v) {
  ScoreSummary s;
  s.count = v.size();
  if (v.empty()) return s;
  double sum = 0.0, sq = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / v.size();
  for (double x : v) sq += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(sq / v.size());
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  return s;
}

}  // namespace

double CosineScore(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("cosine: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw NumericError("cosine: zero-norm embedding");
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

std::vector<std::string> TrialIds(const std::vector<Trial>& trials) {
  std::vector<std::string> ids;
  ids.reserve(2 * trials.size());
  for (const auto& t : trials) {
    ids.push_back(t.enroll);
    ids.push_back(t.test);
  }
  return ids;
}

EmbeddingTable EmbedUtterances(const SpeakerModel& model, const std::vector<Utterance>& corpus,
                               const std::vector<std::string>& ids, const FeatureConfig& feat,
                               EmbedStats* stats) {
  std::map<std::string, const Utterance*> by_id;
  for (const auto& u : corpus) by_id.emplace(u.utterance_id, &u);
  std::set<std::string> missing;
  std::vector<const Utterance*> todo;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      missing.insert(id);
    } else if (seen.insert(id).second) {
      todo.push_back(it->second);
    }
  }
  if (!missing.empty()) throw InputError("unknown utterance ids: " + JoinIds(missing));

  std::vector<SpeakerEmbedding> out(todo.size());
  const bool parallel = kernels::GetKernelMode() == kernels::KernelMode::kParallel;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < todo.size(); ++i) {
    try {
      out[i] = model.Embed(ExtractFeatures(*todo[i], feat), todo[i]->utterance_id);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  if (stats) {
    stats->requested += ids.size();
    stats->computed += todo.size();
    stats->cache_hits += ids.size() - todo.size();
  }
  EmbeddingTable table;
  for (auto& e : out) table.emplace(e.utterance_id, std::move(e));
  return table;
}

void WriteEmbeddings(const std::string& path, const EmbeddingTable& table) {
  ParamArchive ar;
  ar.header = kEmbeddingHeader;
  for (const auto& [id, e] : table) ar.entries.push_back({id, {e.vector.size()}, e.vector});
  WriteParamArchive(path, ar);
}

EmbeddingTable ReadEmbeddings(const std::string& path) {
  ParamArchive ar = ReadParamArchive(path);
  if (ar.header != kEmbeddingHeader) throw ParseError(path + ": not an embedding archive");
  EmbeddingTable table;
  for (auto& entry : ar.entries) {
    if (entry.shape.size() != 1) throw ParseError(path + ": embedding '" + entry.path + "' is not a vector");
    SpeakerEmbedding e;
    e.utterance_id = entry.path;
    double sq = 0.0;
    for (double v : entry.values) sq += v * v;
    e.l2_norm = std::sqrt(sq);
    e.vector = std::move(entry.values);
    table.emplace(e.utterance_id, std::move(e));
  }
  return table;
}

std::vector<ScoredTrial> ScoreTrials(const EmbeddingTable& table, const std::vector<Trial>& trials) {
  std::set<std::string> missing;
  for (const auto& id : TrialIds(trials)) {
    if (!table.count(id)) missing.insert(id);
  }
  if (!missing.empty()) throw InputError("no embedding for utterance ids: " + JoinIds(missing));
  std::vector<ScoredTrial> out;
  out.reserve(trials.size());
  for (const auto& t : trials) {
    out.push_back({t, CosineScore(table.at(t.enroll).vector, table.at(t.test).vector)});
  }
  return out;
}

void WriteScores(const std::string& path, const std::vector<ScoredTrial>& scored) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& s : scored) {
    out << (s.trial.target ? 1 : 0) << ' ' << s.trial.enroll << ' ' << s.trial.test << ' '
        << G17(s.score) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<ScoredTrial> ParseScores(const std::string& text, const std::string& name) {
  std::vector<ScoredTrial> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::istringstream ls(line);
    std::string label, enroll, test, score, extra;
    if (!(ls >> label)) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    if (!(ls >> enroll >> test >> score) || (ls >> extra)) {
      throw ParseError(where + ": expected '<label> <enroll> <test> <score>'");
    }
    if (label != "0" && label != "1") throw ParseError(where + ": label must be 0 or 1");
    double v;
    try {
      v = ParseDouble(score, where);
    } catch (const Error&) {
      throw ParseError(where + ": bad score '" + score + "'");
    }
    if (!std::isfinite(v)) throw ParseError(where + ": non-finite score '" + score + "'");
    out.push_back({{label == "1", enroll, test}, v});
  }
  return out;
}

std::vector<ScoredTrial> ReadScores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseScores(ss.str(), path);
}

ScoreSet ToScoreSet(const std::vector<ScoredTrial>& scored) {
  ScoreSet s;
  for (const auto& t : scored) s.Add(t.trial.target, t.score);
  return s;
}

EvalReport Summarize(const std::vector<ScoredTrial>& scored, const DcfParams& dcf) {
  const ScoreSet set = ToScoreSet(scored);
  EvalReport r;
  r.n_target = set.num_targets();
  r.n_nontarget = set.num_nontargets();
  r.eer = ComputeEer(set);
  r.min_dcf = ComputeMinDcf(set, dcf);
  r.dcf = dcf;
  r.det = SweepThresholds(set);
  std::vector<double> tar, non;
  for (const auto& t : scored) (t.trial.target ? tar : non).push_back(t.score);
  r.target_scores = Summary(tar);
  r.nontarget_scores = Summary(non);
  return r;
}

EvalReport Evaluate(const SpeakerModel& model, const std::vector<Utterance>& corpus,
                    const std::vector<Trial>& trials, const FeatureConfig& feat,
                    const DcfParams& dcf, std::vector<ScoredTrial>* scored) {
  dcf.Validate();
  EmbedStats stats;
  const EmbeddingTable table = EmbedUtterances(model, corpus, TrialIds(trials), feat, &stats);
  std::vector<ScoredTrial> s = ScoreTrials(table, trials);
  EvalReport r = Summarize(s, dcf);
  r.embed = stats;
  if (scored) *scored = std::move(s);
  return r;
}

std::string FormatReport(const EvalReport& r) {
  std::ostringstream out;
  auto summary = [&](const char* prefix, const ScoreSummary& s) {
    out << prefix << ".count=" << s.count << '\n'
        << prefix << ".mean=" << G17(s.mean) << '\n'
        << prefix << ".std=" << G17(s.stddev) << '\n'
        << prefix << ".min=" << G17(s.min) << '\n'
        << prefix << ".max=" << G17(s.max) << '\n';
  };
  out << "n_target=" << r.n_target << '\n'
      << "n_nontarget=" << r.n_nontarget << '\n'
      << "eer=" << G17(r.eer.value) << '\n'
      << "eer_threshold=" << G17(r.eer.threshold) << '\n'
      << "min_dcf=" << G17(r.min_dcf.value) << '\n'
      << "min_dcf_threshold=" << G17(r.min_dcf.threshold) << '\n'
      << "dcf.p_target=" << G17(r.dcf.p_target) << '\n'
      << "dcf.c_miss=" << G17(r.dcf.c_miss) << '\n'
      << "dcf.c_fa=" << G17(r.dcf.c_fa) << '\n';
  summary("target_scores", r.target_scores);
  summary("nontarget_scores", r.nontarget_scores);
  out << "det_points=" << r.det.size() << '\n'
      << "embed.requested=" << r.embed.requested << '\n'
      << "embed.computed=" << r.embed.computed << '\n'
      << "embed.cache_hits=" << r.embed.cache_hits << '\n';
  return out.str();
}

std::string FormatDetCsv(const std::vector<OperatingPoint>& det) {
  std::string out = "p_miss,p_fa,threshold\n";
  for (const auto& p : det) out += G17(p.p_miss) + ',' + G17(p.p_fa) + ',' + G17(p.threshold) + '\n';
  return out;
}

}  // namespace dksv
