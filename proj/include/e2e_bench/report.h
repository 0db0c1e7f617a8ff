// Copyright 2026 The E2E Bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef E2E_BENCH_REPORT_H_
#define E2E_BENCH_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "e2e_bench/corpus.h"
#include "e2e_bench/stats.h"
#include "json.hpp"

namespace e2e_bench {

inline constexpr int kRunSchemaVersion = 1;

// Everything one evaluation produced. Every series covers exactly
// `record_ids`, in that order.
struct RunResult {
  std::string run_id;
  EvalSetMetadata eval_set;
  std::vector<std::string> record_ids;
  // Column order of scores.csv.
  std::vector<MetricSeries> series;
  // Per cosine metric, records scored 0 without an embedding.
  std::map<std::string, std::vector<std::string>> degenerate_records;
  int histogram_bins = 10;
  // Providers, tokenizer, resolved CLI config, tool version, timestamp.
  nlohmann::json provenance = nlohmann::json::object();

  const MetricSeries* Find(const std::string& metric) const;
  std::vector<std::string> MetricNames() const;
};

// Throws DomainError if a series does not cover record_ids in order.
void ValidateRun(const RunResult& run);

nlohmann::json RunToJson(const RunResult& run);

struct WriteOptions {
  bool force = false;
  bool svg = false;
};

// Writes <out_dir>/<run_id>/{run.json, scores.csv, plotdata/*} and returns
// the path of run.json. Refuses to replace an existing run directory unless
// options.force is set (IoError).
std::filesystem::path WriteRun(const RunResult& run, const std::filesystem::path& out_dir,
                               const WriteOptions& options = {});

// (Re)generates plotdata/ inside an existing run directory: precision vs
// recall scatter files per ROUGE granularity and one histogram per cosine
// series, plus SVG renderings when `svg` is set.
void WritePlotData(const RunResult& run, const std::filesystem::path& run_dir, bool svg);

// Loads run.json + scores.csv. Throws InputError or IoError.
RunResult ReadRun(const std::filesystem::path& run_dir);

void WriteScoresCsv(const RunResult& run, std::ostream& out);

// Per-metric mean/std/min/max/n as an aligned text table.
std::string FormatSummaryTable(const RunResult& run);

enum class Verdict { kImproved, kDegraded, kUnchanged };
std::string_view VerdictName(Verdict verdict);

// Metrics where a smaller value is better (the hallucination estimate).
bool LowerIsBetter(const std::string& metric);

struct MetricComparison {
  std::string metric;
  SeriesSummary summary_a;
  SeriesSummary summary_b;
  MeanDelta delta;
  Verdict verdict = Verdict::kUnchanged;
};

struct ComparisonReport {
  std::string run_a;
  std::string run_b;
  double threshold = 0.01;
  std::vector<MetricComparison> metrics;
  // Metrics present in only one run.
  std::vector<std::string> warnings;
};

// Compares b against a on the metrics both runs share. A metric improves
// when its mean moves by more than `threshold` in its better direction.
// Throws InputError when the runs cover different record ids.
ComparisonReport CompareRuns(const RunResult& a, const RunResult& b, double threshold = 0.01);

nlohmann::json ComparisonToJson(const ComparisonReport& report);
std::string FormatComparisonTable(const ComparisonReport& report);

}  // namespace e2e_bench

#endif  // E2E_BENCH_REPORT_H_
