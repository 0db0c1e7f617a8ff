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

#ifndef E2E_BENCH_CORPUS_H_
#define E2E_BENCH_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "e2e_bench/tokenize.h"

namespace e2e_bench {

// One question with its expert (golden) answer and the chatbot's answer.
struct EvalRecord {
  std::string id;
  std::string question;
  std::string golden_answer;
  // May be empty when the chatbot failed to answer.
  std::string candidate_answer;
  std::string variant;

  bool operator==(const EvalRecord&) const = default;
};

struct EvalSetMetadata {
  std::string source_path;
  // UTC, ISO-8601.
  std::string created;
  std::string variant;
};

// Non-empty ordered collection of records with unique ids and non-blank
// golden answers. Immutable after construction; safe to share across threads.
class EvalSet {
 public:
  // Throws InputError when an invariant is violated.
  EvalSet(std::vector<EvalRecord> records, EvalSetMetadata metadata);

  const std::vector<EvalRecord>& records() const { return records_; }
  const EvalSetMetadata& metadata() const { return metadata_; }
  std::size_t size() const { return records_.size(); }
  std::vector<std::string> ids() const;

 private:
  std::vector<EvalRecord> records_;
  EvalSetMetadata metadata_;
};

enum class CorpusFormat { kJsonl, kCsv };

// ".csv" maps to kCsv, everything else to kJsonl.
CorpusFormat FormatFromPath(const std::filesystem::path& path);

// Reads one record per JSONL line (blank lines skipped) or CSV row. Records
// without an id get their zero-based row index, zero-padded to at least
// four digits. Errors name the offending line and surface as InputError.
EvalSet LoadEvalSet(const std::filesystem::path& path, CorpusFormat format);
EvalSet LoadEvalSet(const std::filesystem::path& path);

EvalSet ParseJsonl(std::istream& in, EvalSetMetadata metadata);
EvalSet ParseCsv(std::istream& in, EvalSetMetadata metadata);

void WriteJsonl(const EvalSet& set, std::ostream& out);
void WriteJsonl(const EvalSet& set, const std::filesystem::path& path);

enum class VocabularySource { kBuiltin, kFile };
enum class LengthMode { kMatchGolden, kFixed };

struct RandomWordsPolicy {
  VocabularySource vocabulary_source = VocabularySource::kBuiltin;
  std::filesystem::path vocabulary_path;
  std::uint64_t seed = 0;
  LengthMode length_mode = LengthMode::kMatchGolden;
  std::size_t fixed_length = 0;
};

inline constexpr std::size_t kMinVocabularySize = 100;
inline constexpr std::string_view kRandomBaselineVariant = "random-baseline";

// Distinct tokens of the configured vocabulary in first-seen order. A file
// vocabulary is tokenized with `tokenizer`, so every entry is a single
// token. Throws InputError on unreadable, empty, or too-small vocabularies.
std::vector<std::string> LoadVocabulary(const RandomWordsPolicy& policy,
                                        const TokenizerConfig& tokenizer);

// Replaces each candidate answer with words drawn uniformly with replacement
// from the vocabulary. The seed fully determines the output.
EvalSet MakeRandomWordsSet(const EvalSet& base, const RandomWordsPolicy& policy,
                           const TokenizerConfig& tokenizer = {});
EvalSet MakeRandomWordsSet(const EvalSet& base, const RandomWordsPolicy& policy,
                           const std::vector<std::string>& vocabulary,
                           const TokenizerConfig& tokenizer = {});

}  // namespace e2e_bench

#endif  // E2E_BENCH_CORPUS_H_
