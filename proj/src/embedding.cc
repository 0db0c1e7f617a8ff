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

#include "e2e_bench/embedding.h"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "e2e_bench/errors.h"
#include "e2e_bench/http_provider.h"
#include "e2e_bench/util.h"

namespace e2e_bench {
namespace {

using json = nlohmann::json;

bool ValidLabel(std::string_view label) {
  return !label.empty() && std::all_of(label.begin(), label.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

std::string SanitizeLabel(std::string_view raw) {
  std::string out;
  for (unsigned char c : raw) out += std::isalnum(c) || c == '-' ? static_cast<char>(c) : '_';
  return out.empty() ? "provider" : out;
}

std::size_t ParseCount(std::string_view key, std::string_view value) {
  const double parsed = ParseDouble(value);
  if (parsed < 1 || parsed != std::floor(parsed)) {
    throw InputError("provider parameter '" + std::string(key) +
                     "' must be a positive integer");
  }
  return static_cast<std::size_t>(parsed);
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("embedding vector has no dimensions");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("embedding vector has a non-finite component");
  }
}

double EmbeddingVector::Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

double UnclampedCosine(const EmbeddingVector& x, const EmbeddingVector& y) {
  if (x.dims() != y.dims()) {
    throw DomainError("dimension mismatch: " + std::to_string(x.dims()) + " vs " +
                      std::to_string(y.dims()));
  }
  const double norm_x = x.Norm();
  const double norm_y = y.Norm();
  if (norm_x == 0.0 || norm_y == 0.0) {
    throw DomainError("cosine similarity of a zero-magnitude vector");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < x.dims(); ++i) dot += x[i] * y[i];
  return dot / (norm_x * norm_y);
}

double CosineSimilarity(const EmbeddingVector& x, const EmbeddingVector& y) {
  return std::clamp(UnclampedCosine(x, y), -1.0, 1.0);
}

double BiasAdjusted(double score, double bias) {
  return std::clamp((score - bias) / (1.0 - bias), 0.0, 1.0);
}

std::string_view ProviderKindName(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kMockBow:
      return "mock-bow";
    case ProviderKind::kFileCache:
      return "file-cache";
    case ProviderKind::kHttp:
      return "http";
  }
  return "unknown";
}

ProviderSpec ParseProviderSpec(std::string_view text, const TokenizerConfig& tokenizer,
                               std::string_view default_http_url) {
  ProviderSpec spec;
  spec.tokenizer = tokenizer;
  const auto colon = text.find(':');
  const std::string_view kind = TrimWhitespace(text.substr(0, colon));
  if (kind == "mock-bow") {
    spec.kind = ProviderKind::kMockBow;
  } else if (kind == "file-cache") {
    spec.kind = ProviderKind::kFileCache;
  } else if (kind == "http") {
    spec.kind = ProviderKind::kHttp;
  } else {
    throw InputError("unknown provider kind '" + std::string(kind) +
                     "' (expected mock-bow, file-cache or http)");
  }

  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (TrimWhitespace(item).empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("provider parameter '" + std::string(item) + "' is not key=value");
    }
    const std::string key(TrimWhitespace(item.substr(0, eq)));
    const std::string value(TrimWhitespace(item.substr(eq + 1)));
    if (key == "label") {
      if (!ValidLabel(value)) throw InputError("invalid provider label '" + value + "'");
      spec.label = value;
    } else if (spec.kind == ProviderKind::kMockBow && (key == "dim" || key == "dims")) {
      spec.dims = ParseCount(key, value);
    } else if (spec.kind == ProviderKind::kFileCache && key == "path") {
      spec.cache_path = value;
    } else if (spec.kind == ProviderKind::kHttp && key == "url") {
      spec.base_url = value;
    } else if (spec.kind == ProviderKind::kHttp && key == "model") {
      spec.model = value;
    } else if (spec.kind == ProviderKind::kHttp && key == "timeout") {
      spec.timeout_seconds = ParseDouble(value);
      if (spec.timeout_seconds <= 0) throw InputError("http timeout must be positive");
    } else if (spec.kind == ProviderKind::kHttp && key == "attempts") {
      spec.attempts = static_cast<int>(ParseCount(key, value));
    } else if (spec.kind == ProviderKind::kHttp && key == "backoff") {
      spec.initial_backoff_seconds = ParseDouble(value);
      if (spec.initial_backoff_seconds < 0) throw InputError("http backoff must be >= 0");
    } else if (spec.kind == ProviderKind::kHttp && key == "in-flight") {
      spec.max_in_flight = ParseCount(key, value);
    } else if (spec.kind == ProviderKind::kHttp && key == "batch") {
      spec.batch_size = ParseCount(key, value);
    } else {
      throw InputError("unknown parameter '" + key + "' for provider " + std::string(kind));
    }
  }

  switch (spec.kind) {
    case ProviderKind::kMockBow:
      if (spec.label.empty()) spec.label = "mock";
      break;
    case ProviderKind::kFileCache:
      if (spec.cache_path.empty()) throw InputError("file-cache provider needs path=<file>");
      if (spec.label.empty()) spec.label = SanitizeLabel(spec.cache_path.stem().string());
      break;
    case ProviderKind::kHttp:
      if (spec.model.empty()) throw InputError("http provider needs model=<key>");
      if (spec.base_url.empty()) spec.base_url = default_http_url;
      if (spec.base_url.empty()) spec.base_url = "http://127.0.0.1:8901";
      if (spec.label.empty()) spec.label = SanitizeLabel(spec.model);
      break;
  }
  return spec;
}

json ProviderSpecToJson(const ProviderSpec& spec) {
  json out = {{"kind", ProviderKindName(spec.kind)}, {"label", spec.label}};
  switch (spec.kind) {
    case ProviderKind::kMockBow:
      out["dims"] = spec.dims;
      out["hash"] = "fnv1a64";
      break;
    case ProviderKind::kFileCache:
      out["path"] = spec.cache_path.string();
      break;
    case ProviderKind::kHttp:
      out["url"] = spec.base_url;
      out["model"] = spec.model;
      out["timeout_seconds"] = spec.timeout_seconds;
      out["attempts"] = spec.attempts;
      out["initial_backoff_seconds"] = spec.initial_backoff_seconds;
      out["max_in_flight"] = spec.max_in_flight;
      out["batch_size"] = spec.batch_size;
      break;
  }
  return out;
}

std::unique_ptr<EmbeddingProvider> MakeProvider(const ProviderSpec& spec) {
  switch (spec.kind) {
    case ProviderKind::kMockBow:
      return std::make_unique<MockBowProvider>(spec.dims, spec.tokenizer);
    case ProviderKind::kFileCache:
      return std::make_unique<FileCacheProvider>(spec.cache_path);
    case ProviderKind::kHttp:
      return std::make_unique<HttpProvider>(spec);
  }
  throw InputError("unsupported provider kind");
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

MockBowProvider::MockBowProvider(std::size_t dims, TokenizerConfig tokenizer)
    : dims_(dims), tokenizer_(tokenizer) {
  if (dims_ == 0) throw InputError("mock-bow dimension must be positive");
}

std::size_t MockBowProvider::Bucket(std::string_view token) const {
  return static_cast<std::size_t>(Fnv1a64(token) % dims_);
}

EmbeddingVector MockBowProvider::EmbedOne(std::string_view text) const {
  std::vector<double> counts(dims_, 0.0);
  for (const auto& token : Tokenize(text, tokenizer_)) counts[Bucket(token)] += 1.0;
  double norm = 0.0;
  for (double c : counts) norm += c * c;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& c : counts) c /= norm;
  }
  return EmbeddingVector(std::move(counts));
}

std::vector<EmbeddingVector> MockBowProvider::Embed(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(EmbedOne(text));
  return out;
}

std::string Sha256Hex(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

FileCacheProvider::FileCacheProvider(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open embedding cache " + path.string());
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (TrimWhitespace(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number) + ": ";
    try {
      const json entry = json::parse(line);
      auto digest = entry.at("sha256").get<std::string>();
      const auto dims = entry.at("dims").get<std::size_t>();
      EmbeddingVector vector(entry.at("values").get<std::vector<double>>());
      if (vector.dims() != dims) {
        throw InputError("dims field says " + std::to_string(dims) + " but values has " +
                         std::to_string(vector.dims()));
      }
      if (dims_ == 0) dims_ = dims;
      if (dims != dims_) {
        throw InputError("dimension " + std::to_string(dims) + " differs from " +
                         std::to_string(dims_) + " used earlier in the cache");
      }
      entries_.emplace_back(std::move(digest), std::move(vector));
    } catch (const json::exception& e) {
      throw InputError(where + "malformed cache entry: " + e.what());
    } catch (const Error& e) {
      throw InputError(where + e.what());
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
}

std::vector<EmbeddingVector> FileCacheProvider::Embed(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const std::string digest = Sha256Hex(texts[i]);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), digest,
                               [](const auto& entry, const std::string& key) {
                                 return entry.first < key;
                               });
    if (it == entries_.end() || it->first != digest) {
      throw CacheMissError("embedding cache miss for text with sha256 " + digest, i);
    }
    out.push_back(it->second);
  }
  return out;
}

void WriteEmbeddingCache(const std::filesystem::path& path,
                         std::span<const std::string> texts,
                         std::span<const EmbeddingVector> vectors) {
  if (texts.size() != vectors.size()) {
    throw DomainError("cache texts and vectors differ in length");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write embedding cache " + path.string());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    std::string line = "{\"sha256\":\"" + Sha256Hex(texts[i]) +
                       "\",\"dims\":" + std::to_string(vectors[i].dims()) + ",\"values\":[";
    for (std::size_t d = 0; d < vectors[i].dims(); ++d) {
      if (d > 0) line += ',';
      line += FormatDouble(vectors[i][d]);
    }
    line += "]}\n";
    out << line;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

CosineScores ScoreEvalSet(const EvalSet& set, const EmbeddingProvider& provider,
                          const std::string& metric_name) {
  const auto& records = set.records();
  std::vector<double> scores(records.size(), 0.0);
  std::vector<char> degenerate(records.size(), 0);

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (TrimWhitespace(records[i].candidate_answer).empty()) {
      degenerate[i] = 1;
    } else {
      pending.push_back(i);
    }
  }

  const std::size_t records_per_batch = std::max<std::size_t>(1, provider.batch_size() / 2);
  const std::size_t batches = (pending.size() + records_per_batch - 1) / records_per_batch;
  std::atomic<std::size_t> next_batch{0};
  std::atomic<std::size_t> dims{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};

  auto fail = [&](std::exception_ptr error) {
    std::lock_guard lock(error_mutex);
    if (!first_error) first_error = error;
    failed = true;
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t batch = next_batch.fetch_add(1);
      if (batch >= batches || failed) return;
      const std::size_t begin = batch * records_per_batch;
      const std::size_t end = std::min(pending.size(), begin + records_per_batch);

      // Texts alternate golden, candidate.
      std::vector<std::string> texts;
      texts.reserve(2 * (end - begin));
      for (std::size_t k = begin; k < end; ++k) {
        texts.push_back(records[pending[k]].golden_answer);
        texts.push_back(records[pending[k]].candidate_answer);
      }
      try {
        std::vector<EmbeddingVector> vectors;
        try {
          vectors = provider.Embed(texts);
        } catch (const CacheMissError& e) {
          const auto& id = records[pending[begin + e.text_index() / 2]].id;
          throw ProviderError("record '" + id + "': " + e.what(), id);
        } catch (const ProviderError& e) {
          const auto& first = records[pending[begin]].id;
          const auto& last = records[pending[end - 1]].id;
          const std::string ids = first == last ? first : first + ".." + last;
          throw ProviderError("record '" + ids + "': " + e.what(), first);
        }
        if (vectors.size() != texts.size()) {
          throw ProviderError("provider returned " + std::to_string(vectors.size()) +
                                  " vectors for " + std::to_string(texts.size()) + " texts",
                              records[pending[begin]].id);
        }
        for (const auto& vector : vectors) {
          std::size_t expected = 0;
          if (!dims.compare_exchange_strong(expected, vector.dims()) &&
              expected != vector.dims()) {
            throw ProviderError("dimension inconsistency: got " +
                                    std::to_string(vector.dims()) + ", expected " +
                                    std::to_string(expected),
                                records[pending[begin]].id);
          }
        }
        for (std::size_t k = begin; k < end; ++k) {
          const auto& golden = vectors[2 * (k - begin)];
          const auto& candidate = vectors[2 * (k - begin) + 1];
          if (golden.Norm() == 0.0 || candidate.Norm() == 0.0) {
            degenerate[pending[k]] = 1;
            continue;
          }
          scores[pending[k]] = CosineSimilarity(golden, candidate);
        }
      } catch (...) {
        fail(std::current_exception());
        return;
      }
    }
  };

  const std::size_t threads = std::min(std::max<std::size_t>(1, provider.max_in_flight()), batches);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  CosineScores result;
  std::vector<MetricPoint> points;
  points.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    points.push_back({records[i].id, scores[i]});
    if (degenerate[i]) result.degenerate_ids.push_back(records[i].id);
  }
  result.series = MetricSeries(metric_name, set.metadata().variant, std::move(points));
  return result;
}

}  // namespace e2e_bench
