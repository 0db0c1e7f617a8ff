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

#ifndef E2E_BENCH_ROUGE_H_
#define E2E_BENCH_ROUGE_H_

#include <cstddef>
#include <string_view>

#include "e2e_bench/tokenize.h"

namespace e2e_bench {

enum class RougeGranularity { kRouge1, kRouge2, kRougeLcs };

// "rouge1", "rouge2" or "rougeLcs"; used as metric name prefix.
std::string_view GranularityName(RougeGranularity granularity);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  RougeGranularity granularity = RougeGranularity::kRouge1;
};

// Builds a score from precision and recall; f1 is their harmonic mean, or 0
// when both are 0.
RougeScore MakeRougeScore(double precision, double recall,
                          RougeGranularity granularity);

// Clipped n-gram overlap: sum over n-gram types of min(candidate count,
// reference count).
std::size_t NgramOverlap(const NgramMultiset& candidate,
                         const NgramMultiset& reference);

// ROUGE-N. A side with no n-grams gets a 0 component instead of an error.
// Throws DomainError when n < 1. Granularity is kRouge1 for n == 1 and
// kRouge2 otherwise.
RougeScore RougeN(const TokenSequence& candidate,
                  const TokenSequence& reference, int n);

// Longest common subsequence length, O(|a|·|b|) time and O(min) memory.
std::size_t LcsLength(const TokenSequence& a, const TokenSequence& b);

RougeScore RougeLcs(const TokenSequence& candidate,
                    const TokenSequence& reference);

// 1 - precision: share of candidate content not backed by the reference.
double HallucinationEstimate(const RougeScore& score);

}  // namespace e2e_bench

#endif  // E2E_BENCH_ROUGE_H_
