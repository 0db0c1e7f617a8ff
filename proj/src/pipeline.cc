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

#include "e2e_bench/pipeline.h"

#include <array>
#include <set>

#include "e2e_bench/errors.h"
#include "e2e_bench/rouge.h"
#include "e2e_bench/util.h"

namespace e2e_bench {
namespace {

using json = nlohmann::json;

bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

}  // namespace

bool MetricSelected(const std::vector<std::string>& filter, const std::string& metric) {
  if (filter.empty()) return true;
  for (const auto& entry : filter) {
    if (metric == entry) return true;
    if (StartsWith(metric, entry + "_")) return true;
    if (entry == "rouge" && StartsWith(metric, "rouge")) return true;
  }
  return false;
}

std::vector<MetricSeries> ScoreRouge(const EvalSet& set, const TokenizerConfig& tokenizer,
                                     const std::vector<std::string>& filter) {
  constexpr std::array<RougeGranularity, 3> kGranularities = {
      RougeGranularity::kRouge1, RougeGranularity::kRouge2, RougeGranularity::kRougeLcs};
  constexpr std::array<std::string_view, 3> kParts = {"precision", "recall", "f1"};

  // columns[g * 3 + part], then hallucination last.
  std::vector<std::vector<MetricPoint>> columns(kGranularities.size() * kParts.size() + 1);
  for (const auto& record : set.records()) {
    const auto candidate = Tokenize(record.candidate_answer, tokenizer);
    const auto reference = Tokenize(record.golden_answer, tokenizer);
    const std::array<RougeScore, 3> scores = {RougeN(candidate, reference, 1),
                                              RougeN(candidate, reference, 2),
                                              RougeLcs(candidate, reference)};
    for (std::size_t g = 0; g < scores.size(); ++g) {
      columns[g * 3 + 0].push_back({record.id, scores[g].precision});
      columns[g * 3 + 1].push_back({record.id, scores[g].recall});
      columns[g * 3 + 2].push_back({record.id, scores[g].f1});
    }
    columns.back().push_back({record.id, HallucinationEstimate(scores[0])});
  }

  std::vector<MetricSeries> out;
  const std::string& variant = set.metadata().variant;
  for (std::size_t g = 0; g < kGranularities.size(); ++g) {
    for (std::size_t p = 0; p < kParts.size(); ++p) {
      std::string name = std::string(GranularityName(kGranularities[g])) + "_" + std::string(kParts[p]);
      if (!MetricSelected(filter, name)) continue;
      out.emplace_back(std::move(name), variant, std::move(columns[g * 3 + p]));
    }
  }
  if (MetricSelected(filter, "hallucination")) {
    out.emplace_back("hallucination", variant, std::move(columns.back()));
  }
  return out;
}

RunResult EvaluateRun(const EvalSet& set, const RunOptions& options, const std::string& run_id) {
  RunResult run;
  run.run_id = run_id;
  run.eval_set = set.metadata();
  run.record_ids = set.ids();
  run.histogram_bins = options.histogram_bins;

  std::set<std::string> labels;
  json providers = json::array();
  for (const auto& spec : options.providers) {
    const std::string metric = "cosine_" + spec.label;
    if (!labels.insert(spec.label).second) {
      throw InputError("two providers share the label '" + spec.label +
                       "'; set label=<name> on one of them");
    }
    const bool want_raw = MetricSelected(options.metrics, metric);
    const bool want_adj = options.bias_adjust && MetricSelected(options.metrics, metric + "_adj");
    if (!want_raw && !want_adj) continue;
    providers.push_back(ProviderSpecToJson(spec));

    auto provider = MakeProvider(spec);
    auto scores = ScoreEvalSet(set, *provider, metric);
    if (want_raw) run.series.push_back(scores.series);
    if (want_adj) {
      std::vector<MetricPoint> adjusted;
      for (const auto& point : scores.series.points()) {
        adjusted.push_back({point.record_id, BiasAdjusted(point.value)});
      }
      run.series.emplace_back(metric + "_adj", scores.series.variant(), std::move(adjusted));
    }
    run.degenerate_records[metric] = std::move(scores.degenerate_ids);
  }

  for (auto& series : ScoreRouge(set, options.tokenizer, options.metrics)) {
    run.series.push_back(std::move(series));
  }
  if (run.series.empty()) throw InputError("metric selection matched nothing");

  run.provenance = {{"providers", providers},
                    {"tokenizer",
                     {{"lowercase", options.tokenizer.lowercase},
                      {"keep_punctuation", options.tokenizer.keep_punctuation}}},
                    {"bias_adjust", options.bias_adjust},
                    {"tool_version", kToolVersion},
                    {"timestamp", UtcTimestamp()}};
  return run;
}

}  // namespace e2e_bench
