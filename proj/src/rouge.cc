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

#include "e2e_bench/rouge.h"

#include <algorithm>
#include <vector>

namespace e2e_bench {
namespace {

double Ratio(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) return 0.0;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

}  // namespace

std::string_view GranularityName(RougeGranularity granularity) {
  switch (granularity) {
    case RougeGranularity::kRouge1:
      return "rouge1";
    case RougeGranularity::kRouge2:
      return "rouge2";
    case RougeGranularity::kRougeLcs:
      return "rougeLcs";
  }
  return "unknown";
}

RougeScore MakeRougeScore(double precision, double recall,
                          RougeGranularity granularity) {
  RougeScore score;
  score.precision = precision;
  score.recall = recall;
  score.granularity = granularity;
  if (precision + recall > 0.0) {
    score.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return score;
}

std::size_t NgramOverlap(const NgramMultiset& candidate,
                         const NgramMultiset& reference) {
  // Iterate over the smaller map and probe the other.
  const bool candidate_smaller =
      candidate.counts().size() <= reference.counts().size();
  const auto& small = candidate_smaller ? candidate : reference;
  const auto& large = candidate_smaller ? reference : candidate;
  std::size_t overlap = 0;
  for (const auto& [gram, count] : small.counts()) {
    overlap += std::min(count, large.count(gram));
  }
  return overlap;
}

RougeScore RougeN(const TokenSequence& candidate,
                  const TokenSequence& reference, int n) {
  const NgramMultiset candidate_grams(candidate, n);
  const NgramMultiset reference_grams(reference, n);
  const std::size_t overlap = NgramOverlap(candidate_grams, reference_grams);
  return MakeRougeScore(Ratio(overlap, candidate_grams.total()),
                        Ratio(overlap, reference_grams.total()),
                        n == 1 ? RougeGranularity::kRouge1
                               : RougeGranularity::kRouge2);
}

std::size_t LcsLength(const TokenSequence& a, const TokenSequence& b) {
  const TokenSequence& rows = a.size() >= b.size() ? a : b;
  const TokenSequence& cols = a.size() >= b.size() ? b : a;
  if (cols.empty()) return 0;

  std::vector<std::size_t> prev(cols.size() + 1, 0);
  std::vector<std::size_t> curr(cols.size() + 1, 0);
  for (const auto& row_token : rows) {
    for (std::size_t j = 1; j <= cols.size(); ++j) {
      if (row_token == cols[j - 1]) {
        curr[j] = prev[j - 1] + 1;
      } else {
        curr[j] = std::max(prev[j], curr[j - 1]);
      }
    }
    std::swap(prev, curr);
  }
  return prev[cols.size()];
}

RougeScore RougeLcs(const TokenSequence& candidate,
                    const TokenSequence& reference) {
  const std::size_t lcs = LcsLength(candidate, reference);
  return MakeRougeScore(Ratio(lcs, candidate.size()),
                        Ratio(lcs, reference.size()),
                        RougeGranularity::kRougeLcs);
}

double HallucinationEstimate(const RougeScore& score) {
  return 1.0 - score.precision;
}

}  // namespace e2e_bench
