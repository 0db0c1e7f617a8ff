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

#ifndef E2E_BENCH_EMBEDDING_H_
#define E2E_BENCH_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "e2e_bench/corpus.h"
#include "e2e_bench/stats.h"
#include "e2e_bench/tokenize.h"
#include "json.hpp"

namespace e2e_bench {

// Fixed-length real vector with finite components. The zero vector is a
// valid embedding (mock-bow of a text without tokens) but has no cosine.
class EmbeddingVector {
 public:
  // Throws DomainError on an empty or non-finite input.
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dims() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double Norm() const;

  bool operator==(const EmbeddingVector&) const = default;

 private:
  std::vector<double> values_;
};

// dot(x, y) / (|x| |y|) without clamping. Throws DomainError on a dimension
// mismatch or a zero-magnitude vector.
double UnclampedCosine(const EmbeddingVector& x, const EmbeddingVector& y);

// UnclampedCosine clamped to [-1, 1].
double CosineSimilarity(const EmbeddingVector& x, const EmbeddingVector& y);

// (score - bias) / (1 - bias), clamped to [0, 1].
double BiasAdjusted(double score, double bias = 0.5);

enum class ProviderKind { kMockBow, kFileCache, kHttp };

struct ProviderSpec {
  ProviderKind kind = ProviderKind::kMockBow;
  // Names the provider's metric: cosine_<label>.
  std::string label;
  // mock-bow
  std::size_t dims = 256;
  TokenizerConfig tokenizer;
  // file-cache
  std::filesystem::path cache_path;
  // http
  std::string base_url;
  std::string model;
  double timeout_seconds = 30.0;
  int attempts = 3;
  double initial_backoff_seconds = 0.5;
  std::size_t max_in_flight = 4;
  std::size_t batch_size = 32;
};

// Parses "kind[:key=value,...]". Kinds: mock-bow (dim), file-cache (path),
// http (url, model, timeout, attempts, backoff, in-flight, batch). Every
// kind accepts label. A missing http url falls back to `default_http_url`.
// Throws InputError on malformed specs.
ProviderSpec ParseProviderSpec(std::string_view text,
                               const TokenizerConfig& tokenizer = {},
                               std::string_view default_http_url = {});
std::string_view ProviderKindName(ProviderKind kind);
nlohmann::json ProviderSpecToJson(const ProviderSpec& spec);

// Text-to-vector encoder. Implementations must be safe to call concurrently.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // One vector per text, order-aligned. Throws ProviderError.
  virtual std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) const = 0;
  virtual std::size_t max_in_flight() const { return 1; }
  virtual std::size_t batch_size() const { return 64; }
};

std::unique_ptr<EmbeddingProvider> MakeProvider(const ProviderSpec& spec);

std::uint64_t Fnv1a64(std::string_view bytes);

// Bag-of-words embedder: each token adds 1 to bucket fnv1a64(token) mod
// dims, and the count vector is L2-normalized. Texts without tokens map to
// the zero vector.
class MockBowProvider : public EmbeddingProvider {
 public:
  explicit MockBowProvider(std::size_t dims = 256, TokenizerConfig tokenizer = {});

  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) const override;
  EmbeddingVector EmbedOne(std::string_view text) const;
  std::size_t Bucket(std::string_view token) const;

 private:
  std::size_t dims_;
  TokenizerConfig tokenizer_;
};

// Lowercase hex SHA-256 of the UTF-8 bytes.
std::string Sha256Hex(std::string_view text);

// Content-addressed vectors loaded from JSONL lines of the form
// {"sha256": hex, "dims": int, "values": [...]}.
class FileCacheProvider : public EmbeddingProvider {
 public:
  // Throws InputError on unreadable or malformed cache files, and on
  // entries whose dims disagree.
  explicit FileCacheProvider(const std::filesystem::path& path);

  // Throws ProviderError naming the missing digest.
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) const override;
  std::size_t size() const { return entries_.size(); }
  std::size_t dims() const { return dims_; }

 private:
  std::vector<std::pair<std::string, EmbeddingVector>> entries_;  // sorted by digest
  std::size_t dims_ = 0;
};

// Writes (or overwrites) a cache file for the given texts.
void WriteEmbeddingCache(const std::filesystem::path& path,
                         std::span<const std::string> texts,
                         std::span<const EmbeddingVector> vectors);

struct CosineScores {
  MetricSeries series;
  // Records scored 0 without embedding: empty candidate answers, or texts
  // that embed to the zero vector.
  std::vector<std::string> degenerate_ids;
};

// S(golden, candidate) for every record, in record order. Batches run on up
// to provider.max_in_flight() threads. Provider errors are rethrown with the
// failing record id attached.
CosineScores ScoreEvalSet(const EvalSet& set, const EmbeddingProvider& provider,
                          const std::string& metric_name);

}  // namespace e2e_bench

#endif  // E2E_BENCH_EMBEDDING_H_
