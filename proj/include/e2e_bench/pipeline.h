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

#ifndef E2E_BENCH_PIPELINE_H_
#define E2E_BENCH_PIPELINE_H_

#include <string>
#include <string_view>
#include <vector>

#include "e2e_bench/corpus.h"
#include "e2e_bench/embedding.h"
#include "e2e_bench/report.h"
#include "e2e_bench/stats.h"
#include "e2e_bench/tokenize.h"

namespace e2e_bench {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunOptions {
  std::vector<ProviderSpec> providers;
  TokenizerConfig tokenizer;
  // Metric names or groups (cosine, rouge, rouge1, rouge2, rougeLcs,
  // hallucination, or a full metric name). Empty selects everything.
  std::vector<std::string> metrics;
  // Adds cosine_<label>_adj = (s - 0.5) / 0.5 clamped to [0, 1].
  bool bias_adjust = false;
  int histogram_bins = 10;
};

bool MetricSelected(const std::vector<std::string>& filter, const std::string& metric);

// rouge{1,2,Lcs}_{precision,recall,f1} and hallucination (1 - rouge1
// precision), filtered by `filter`.
std::vector<MetricSeries> ScoreRouge(const EvalSet& set, const TokenizerConfig& tokenizer,
                                     const std::vector<std::string>& filter = {});

// Runs every selected metric over the set. Cosine series come first, one
// per provider in the given order, then the ROUGE family.
RunResult EvaluateRun(const EvalSet& set, const RunOptions& options, const std::string& run_id);

}  // namespace e2e_bench

#endif  // E2E_BENCH_PIPELINE_H_
