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

#ifndef E2E_BENCH_HTTP_PROVIDER_H_
#define E2E_BENCH_HTTP_PROVIDER_H_

#include <span>
#include <string>
#include <vector>

#include "e2e_bench/embedding.h"

namespace e2e_bench {

// Client for the embedding sidecar.
//
//   POST {base_url}/embed  {"texts": [...], "model": key}
//     -> {"model": key, "dims": n, "vectors": [[...], ...]}
//
// Requests carry at most kMaxSidecarBatch texts. Connection failures,
// timeouts and 5xx responses are retried `attempts` times in total with the
// backoff doubling after each failure; 4xx responses fail immediately.
class HttpProvider : public EmbeddingProvider {
 public:
  static constexpr std::size_t kMaxSidecarBatch = 256;

  explicit HttpProvider(ProviderSpec spec);

  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) const override;
  std::size_t max_in_flight() const override { return spec_.max_in_flight; }
  std::size_t batch_size() const override { return spec_.batch_size; }

 private:
  std::vector<EmbeddingVector> EmbedBatch(std::span<const std::string> texts) const;

  ProviderSpec spec_;
  std::string host_;  // scheme://host:port
  std::string path_prefix_;
};

// Checks an /embed response body against the request and returns the
// vectors. Throws ProviderError on any contract violation.
std::vector<EmbeddingVector> ParseEmbedResponse(const std::string& body,
                                                const std::string& model,
                                                std::size_t expected_count);

}  // namespace e2e_bench

#endif  // E2E_BENCH_HTTP_PROVIDER_H_
