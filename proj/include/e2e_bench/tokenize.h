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

#ifndef E2E_BENCH_TOKENIZE_H_
#define E2E_BENCH_TOKENIZE_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace e2e_bench {

struct TokenizerConfig {
  bool lowercase = true;
  // When set, each punctuation or symbol code point becomes its own token
  // instead of acting as a separator.
  bool keep_punctuation = false;

  bool operator==(const TokenizerConfig&) const = default;
};

// Ordered, normalized tokens. Every token is non-empty and whitespace-free.
using TokenSequence = std::vector<std::string>;

// Splits UTF-8 text on maximal runs of code points that are neither letters,
// digits nor combining marks (Unicode general categories L*, Nd, M*).
// Invalid UTF-8 bytes act as separators.
TokenSequence Tokenize(std::string_view text, const TokenizerConfig& config = {});

using Ngram = std::vector<std::string>;

// Sliding-window n-gram counts of one token sequence.
class NgramMultiset {
 public:
  NgramMultiset(const TokenSequence& tokens, int n);

  int order() const { return n_; }
  // Sum of all counts; equals max(0, len - n + 1) of the source sequence.
  std::size_t total() const { return total_; }
  // Zero for n-grams that never occur.
  std::size_t count(const Ngram& gram) const;
  const std::map<Ngram, std::size_t>& counts() const { return counts_; }

 private:
  int n_;
  std::size_t total_ = 0;
  std::map<Ngram, std::size_t> counts_;
};

// Throws DomainError when n < 1.
NgramMultiset Ngrams(const TokenSequence& tokens, int n);

}  // namespace e2e_bench

#endif  // E2E_BENCH_TOKENIZE_H_
